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

#include "turnsample/stream.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "turnsample/matvec.hpp"
#include "turnsample/tensor.hpp"

namespace turnsample {

std::string_view to_string(StreamModel m) {
  switch (m) {
    case StreamModel::kM1: return "m1";
    case StreamModel::kM2: return "m2";
    case StreamModel::kM3: return "m3";
    case StreamModel::kTensor: return "tensor";
  }
  return "?";
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {
// Shortest round-trip rendering for stream files: reparses to the same
// double, stays readable ("0.35" rather than its 17-digit expansion).
std::string format_number(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}
}  // namespace

SamplerConfig StreamConfig::sampler_config() const {
  SamplerConfig cfg;
  cfg.n = n;  // the tensor sampler moves this to n^2 itself
  cfg.epsilon = eps;
  cfg.seed = MasterSeed{seed};
  if (c) cfg.threshold_c = *c;
  if (r) cfg.repetitions = *r;
  if (rows) cfg.rows = *rows;
  if (buckets) cfg.buckets = *buckets;
  if (ams) cfg.ams_estimators = *ams;
  return cfg;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

uint64_t parse_u64(const std::string& tok, std::size_t line, const char* what) {
  try {
    std::size_t pos = 0;
    if (!tok.empty() && tok[0] == '-') throw std::invalid_argument("negative");
    const unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected unsigned integer for ") + what + ", got '" + tok + "'");
  }
}

double parse_f64(const std::string& tok, std::size_t line, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected number for ") + what + ", got '" + tok + "'");
  }
}

StreamConfig parse_config_line(const std::vector<std::string>& tokens, std::size_t line) {
  StreamConfig cfg;
  bool saw_model = false, saw_n = false, saw_d = false, saw_eps = false, saw_seed = false;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError(line, "config entries must be key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    if (key == "model") {
      if (value == "m1") cfg.model = StreamModel::kM1;
      else if (value == "m2") cfg.model = StreamModel::kM2;
      else if (value == "m3") cfg.model = StreamModel::kM3;
      else if (value == "tensor") cfg.model = StreamModel::kTensor;
      else throw ParseError(line, "unknown model '" + value + "'");
      saw_model = true;
    } else if (key == "n") {
      cfg.n = parse_u64(value, line, "n");
      saw_n = true;
    } else if (key == "d") {
      cfg.d = parse_u64(value, line, "d");
      saw_d = true;
    } else if (key == "eps") {
      cfg.eps = parse_f64(value, line, "eps");
      saw_eps = true;
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, line, "seed");
      saw_seed = true;
    } else if (key == "C") {
      cfg.c = parse_f64(value, line, "C");
    } else if (key == "R") {
      cfg.r = parse_u64(value, line, "R");
    } else if (key == "rows") {
      cfg.rows = parse_u64(value, line, "rows");
    } else if (key == "buckets") {
      cfg.buckets = parse_u64(value, line, "buckets");
    } else if (key == "ams") {
      cfg.ams = parse_u64(value, line, "ams");
    } else {
      throw ParseError(line, "unknown config key '" + key + "'");
    }
  }
  if (!saw_model || !saw_n || !saw_d || !saw_eps || !saw_seed)
    throw ParseError(line, "config line requires model, n, d, eps, seed");
  if (cfg.n == 0 || cfg.d == 0) throw ParseError(line, "n and d must be positive");
  return cfg;
}

}  // namespace

StreamFile parse_stream(std::string_view text) {
  StreamFile file;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  bool saw_header = false, saw_config = false, saw_event = false;
  bool saw_xvec = false;
  std::vector<bool> a_row_seen, a2_row_seen;

  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (!saw_header) {
      if (tokens.size() != 2 || tokens[0] != "SAMPLER-STREAM" || tokens[1] != "v1")
        throw ParseError(line_no, "expected header 'SAMPLER-STREAM v1'");
      saw_header = true;
      continue;
    }
    if (!saw_config) {
      file.config = parse_config_line(tokens, line_no);
      a_row_seen.assign(file.config.n, false);
      a2_row_seen.assign(file.config.n, false);
      saw_config = true;
      continue;
    }

    const StreamConfig& cfg = file.config;
    const std::string& kind = tokens[0];

    if (kind == "XVEC" || kind == "AROW" || kind == "A2ROW") {
      if (saw_event) throw ParseError(line_no, "initialization after the first update/query");
    }

    if (kind == "XVEC") {
      if (saw_xvec) throw ParseError(line_no, "duplicate XVEC");
      const std::size_t want =
          cfg.model == StreamModel::kTensor ? cfg.d * cfg.d : cfg.d;
      if (cfg.model == StreamModel::kM2 || cfg.model == StreamModel::kM3)
        throw ParseError(line_no, "XVEC not allowed: x is streamed in this model");
      if (tokens.size() != want + 1)
        throw ParseError(line_no, "XVEC needs " + std::to_string(want) + " entries");
      file.xvec.reserve(want);
      for (std::size_t t = 1; t < tokens.size(); ++t)
        file.xvec.push_back(parse_f64(tokens[t], line_no, "XVEC entry"));
      saw_xvec = true;
    } else if (kind == "AROW") {
      if (cfg.model != StreamModel::kM2)
        throw ParseError(line_no, "AROW is only valid for model m2");
      if (tokens.size() != cfg.d + 2)
        throw ParseError(line_no, "AROW needs a row index and " + std::to_string(cfg.d) + " entries");
      const uint64_t i = parse_u64(tokens[1], line_no, "AROW index");
      if (i < 1 || i > cfg.n) throw ParseError(line_no, "AROW index out of range");
      if (a_row_seen[i - 1]) throw ParseError(line_no, "duplicate AROW " + std::to_string(i));
      a_row_seen[i - 1] = true;
      std::vector<double> row(cfg.d);
      for (std::size_t t = 0; t < cfg.d; ++t)
        row[t] = parse_f64(tokens[t + 2], line_no, "AROW entry");
      file.a_rows.emplace_back(i, std::move(row));
    } else if (kind == "A2ROW") {
      if (cfg.model != StreamModel::kTensor)
        throw ParseError(line_no, "A2ROW is only valid for model tensor");
      if (tokens.size() != cfg.d + 2)
        throw ParseError(line_no, "A2ROW needs a row index and " + std::to_string(cfg.d) + " entries");
      const uint64_t i = parse_u64(tokens[1], line_no, "A2ROW index");
      if (i < 1 || i > cfg.n) throw ParseError(line_no, "A2ROW index out of range");
      if (a2_row_seen[i - 1]) throw ParseError(line_no, "duplicate A2ROW " + std::to_string(i));
      a2_row_seen[i - 1] = true;
      std::vector<double> row(cfg.d);
      for (std::size_t t = 0; t < cfg.d; ++t)
        row[t] = parse_f64(tokens[t + 2], line_no, "A2ROW entry");
      file.a2_rows.emplace_back(i, std::move(row));
    } else if (kind == "U") {
      saw_event = true;
      if (tokens.size() < 2) throw ParseError(line_no, "update needs a target");
      StreamUpdate u;
      const std::string& target = tokens[1];
      if (target == "A") {
        if (cfg.model != StreamModel::kM1 && cfg.model != StreamModel::kM3)
          throw ParseError(line_no, "target A is only valid for models m1, m3");
        if (tokens.size() != 5) throw ParseError(line_no, "U A needs <i> <j> <delta>");
        u.target = UpdateTarget::kA;
        u.i = parse_u64(tokens[2], line_no, "row");
        u.j = parse_u64(tokens[3], line_no, "column");
        u.delta = parse_f64(tokens[4], line_no, "delta");
        if (u.i < 1 || u.i > cfg.n || u.j < 1 || u.j > cfg.d)
          throw ParseError(line_no, "A update index out of range");
      } else if (target == "X") {
        if (cfg.model != StreamModel::kM2 && cfg.model != StreamModel::kM3)
          throw ParseError(line_no, "target X is only valid for models m2, m3");
        if (tokens.size() != 4) throw ParseError(line_no, "U X needs <j> <delta>");
        u.target = UpdateTarget::kX;
        u.j = parse_u64(tokens[2], line_no, "coordinate");
        u.delta = parse_f64(tokens[3], line_no, "delta");
        if (u.j < 1 || u.j > cfg.d) throw ParseError(line_no, "X update index out of range");
      } else if (target == "A1") {
        if (cfg.model != StreamModel::kTensor)
          throw ParseError(line_no, "target A1 is only valid for model tensor");
        if (tokens.size() != 5) throw ParseError(line_no, "U A1 needs <i> <j> <delta>");
        u.target = UpdateTarget::kA1;
        u.i = parse_u64(tokens[2], line_no, "row");
        u.j = parse_u64(tokens[3], line_no, "column");
        u.delta = parse_f64(tokens[4], line_no, "delta");
        if (u.i < 1 || u.i > cfg.n || u.j < 1 || u.j > cfg.d)
          throw ParseError(line_no, "A1 update index out of range");
      } else {
        throw ParseError(line_no, "unknown update target '" + target + "'");
      }
      file.events.push_back({StreamEvent::Kind::kUpdate, u});
    } else if (kind == "Q") {
      saw_event = true;
      if (tokens.size() != 1) throw ParseError(line_no, "Q takes no arguments");
      file.events.push_back({StreamEvent::Kind::kQuery, {}});
    } else {
      throw ParseError(line_no, "unknown line kind '" + kind + "'");
    }
  }

  if (!saw_header) throw ParseError(line_no + 1, "missing header");
  if (!saw_config) throw ParseError(line_no + 1, "missing config line");
  if (file.config.model == StreamModel::kM1 && !saw_xvec)
    throw ParseError(line_no + 1, "model m1 requires XVEC");
  if (file.config.model == StreamModel::kTensor && !saw_xvec)
    throw ParseError(line_no + 1, "model tensor requires XVEC");
  return file;
}

std::string emit_stream(const StreamFile& file) {
  std::ostringstream out;
  out << "SAMPLER-STREAM v1\n";
  const StreamConfig& cfg = file.config;
  out << "model=" << to_string(cfg.model) << " n=" << cfg.n << " d=" << cfg.d
      << " eps=" << format_number(cfg.eps) << " seed=" << cfg.seed;
  if (cfg.c) out << " C=" << format_number(*cfg.c);
  if (cfg.r) out << " R=" << *cfg.r;
  if (cfg.rows) out << " rows=" << *cfg.rows;
  if (cfg.buckets) out << " buckets=" << *cfg.buckets;
  if (cfg.ams) out << " ams=" << *cfg.ams;
  out << "\n";
  if (!file.xvec.empty()) {
    out << "XVEC";
    for (double v : file.xvec) out << ' ' << format_number(v);
    out << "\n";
  }
  for (const auto& [i, row] : file.a_rows) {
    out << "AROW " << i;
    for (double v : row) out << ' ' << format_number(v);
    out << "\n";
  }
  for (const auto& [i, row] : file.a2_rows) {
    out << "A2ROW " << i;
    for (double v : row) out << ' ' << format_number(v);
    out << "\n";
  }
  for (const auto& ev : file.events) {
    if (ev.kind == StreamEvent::Kind::kQuery) {
      out << "Q\n";
      continue;
    }
    const StreamUpdate& u = ev.update;
    switch (u.target) {
      case UpdateTarget::kA:
        out << "U A " << u.i << ' ' << u.j << ' ' << format_number(u.delta) << "\n";
        break;
      case UpdateTarget::kX:
        out << "U X " << u.j << ' ' << format_number(u.delta) << "\n";
        break;
      case UpdateTarget::kA1:
        out << "U A1 " << u.i << ' ' << u.j << ' ' << format_number(u.delta) << "\n";
        break;
    }
  }
  return out.str();
}

std::string format_query_record(const QueryRecord& rec, bool tensor) {
  std::ostringstream out;
  out << "Q " << rec.number;
  if (!rec.ok) {
    out << " FAIL all-repetitions-failed";
    return out.str();
  }
  out << " OK index=" << rec.index;
  if (tensor) out << " i1=" << rec.i1 << " i2=" << rec.i2;
  out << " estimate=" << format_g17(rec.estimate);
  return out.str();
}

RunResult run_stream(const StreamFile& file, std::ostream* out) {
  const StreamConfig& cfg = file.config;
  SamplerConfig scfg = cfg.sampler_config();

  std::optional<MatVecSampler> mv;
  std::optional<TensorSampler> ts;

  if (cfg.model == StreamModel::kTensor) {
    Matrix a2(cfg.n, cfg.d);
    for (const auto& [i, row] : file.a2_rows)
      for (uint64_t j = 0; j < cfg.d; ++j) a2.at(i - 1, j) = row[j];
    ts.emplace(cfg.n, cfg.d, scfg, a2, file.xvec);
  } else if (cfg.model == StreamModel::kM1) {
    mv.emplace(MatVecModel::kUpdateAFixX, cfg.n, cfg.d, scfg, nullptr, file.xvec);
  } else if (cfg.model == StreamModel::kM2) {
    Matrix a(cfg.n, cfg.d);
    for (const auto& [i, row] : file.a_rows)
      for (uint64_t j = 0; j < cfg.d; ++j) a.at(i - 1, j) = row[j];
    mv.emplace(MatVecModel::kFixAUpdateX, cfg.n, cfg.d, scfg, &a);
  } else {
    mv.emplace(MatVecModel::kUpdateBoth, cfg.n, cfg.d, scfg);
  }

  RunResult result;
  std::size_t query_no = 0;
  for (const auto& ev : file.events) {
    if (ev.kind == StreamEvent::Kind::kUpdate) {
      const StreamUpdate& u = ev.update;
      switch (u.target) {
        case UpdateTarget::kA: mv->update_a(u.i, u.j, u.delta); break;
        case UpdateTarget::kX: mv->update_x(u.j, u.delta); break;
        case UpdateTarget::kA1: ts->update_a1(u.i, u.j, u.delta); break;
      }
      continue;
    }
    QueryRecord rec;
    rec.number = ++query_no;
    if (ts) {
      if (auto s = ts->try_query()) {
        rec.ok = true;
        rec.i1 = s->i1;
        rec.i2 = s->i2;
        rec.index = kron_flat(s->i1, s->i2, cfg.n);
        rec.estimate = s->estimate;
      }
    } else {
      if (auto s = mv->try_query()) {
        rec.ok = true;
        rec.index = s->index;
        rec.estimate = s->estimate;
      }
    }
    if (!rec.ok) result.any_failed = true;
    if (out) (*out) << format_query_record(rec, ts.has_value()) << "\n";
    result.records.push_back(rec);
  }
  return result;
}

}  // namespace turnsample
