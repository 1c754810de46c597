/*
 * Copyright 2026 The turnsample authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "turnsample/rng.hpp"

// Everything in rng.hpp is header-inline; this translation unit anchors the
// module in the library and keeps a couple of compile-time checks close by.

namespace turnsample {

static_assert(prf_word(MasterSeed{1}, 2, 3) == prf_word(MasterSeed{1}, 2, 3));
static_assert(detail::kMersenne61 == 0x1fffffffffffffffULL);

}  // namespace turnsample
