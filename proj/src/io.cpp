#include "boolmodel/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace boolmodel {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) fail(std::string(where) + ": missing field \"" + key + "\"");
  return j.at(key);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  return j.get<double>();
}

Vec2 point(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where + ": expected [x, y]");
  return {number(j[0], where), number(j[1], where)};
}

std::vector<double> numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of numbers");
  std::vector<double> v;
  for (const auto& e : j) v.push_back(number(e, where));
  return v;
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) fail(where + ": unknown field \"" + k + "\"");
  }
}

}  // namespace

Json shape_to_json(const GrainShape& s) {
  if (s.is_disk()) return {{"kind", "disk"}, {"radius", s.as_disk().radius}};
  if (s.is_rect()) return {{"kind", "rect"}, {"halfwidth", s.as_rect().halfwidth}, {"halfheight", s.as_rect().halfheight}};
  Json v = Json::array();
  const auto poly = s.to_polygon();
  for (const auto& p : poly.vertices()) v.push_back({p.x, p.y});
  return {{"kind", "polygon"}, {"vertices", v}};
}

GrainShape shape_from_json(const Json& j) {
  const auto& kind = field(j, "kind", "shape");
  if (!kind.is_string()) fail("shape: \"kind\" must be a string");
  const auto k = kind.get<std::string>();
  if (k == "disk") {
    check_keys(j, {"kind", "radius"}, "disk shape");
    return GrainShape::disk(number(field(j, "radius", "disk shape"), "disk radius"));
  }
  if (k == "rect") {
    check_keys(j, {"kind", "halfwidth", "halfheight"}, "rect shape");
    return GrainShape::rect(number(field(j, "halfwidth", "rect shape"), "rect halfwidth"),
                            number(field(j, "halfheight", "rect shape"), "rect halfheight"));
  }
  if (k == "polygon") {
    check_keys(j, {"kind", "vertices"}, "polygon shape");
    const auto& v = field(j, "vertices", "polygon shape");
    if (!v.is_array()) fail("polygon shape: \"vertices\" must be an array");
    std::vector<Vec2> pts;
    for (const auto& p : v) pts.push_back(point(p, "polygon vertex"));
    return GrainShape::polygon(std::move(pts));
  }
  fail("shape: unknown kind \"" + k + "\" (expected disk, rect or polygon)");
}

Json law_to_json(const ParameterLaw& l) {
  switch (l.kind()) {
    case ParameterLaw::Kind::constant:
      return l.lower();
    case ParameterLaw::Kind::uniform:
      return {{"uniform", {l.lower(), l.upper()}}};
    case ParameterLaw::Kind::discrete: {
      Json v = Json::array(), w = Json::array();
      for (const auto& [x, p] : l.atoms()) {
        v.push_back(x);
        w.push_back(p);
      }
      return {{"values", v}, {"weights", w}};
    }
  }
  return nullptr;
}

ParameterLaw law_from_json(const Json& j) {
  if (j.is_number()) return ParameterLaw::constant(j.get<double>());
  if (j.is_object() && j.contains("uniform")) {
    check_keys(j, {"uniform"}, "uniform law");
    const auto ab = numbers(j.at("uniform"), "uniform law");
    if (ab.size() != 2) fail("uniform law: expected [a, b]");
    return ParameterLaw::uniform(ab[0], ab[1]);
  }
  if (j.is_object() && j.contains("values")) {
    check_keys(j, {"values", "weights"}, "discrete law");
    auto v = numbers(j.at("values"), "discrete law values");
    auto w = j.contains("weights") ? numbers(j.at("weights"), "discrete law weights") : std::vector<double>(v.size(), 1.0);
    return ParameterLaw::discrete(std::move(v), std::move(w));
  }
  fail("parameter law: expected a number, {\"uniform\": [a, b]} or {\"values\": [...], \"weights\": [...]}");
}

Json grains_to_json(const GrainDistribution& q) {
  Json j;
  switch (q.family()) {
    case GrainDistribution::Family::disk:
      j = {{"family", "disk"}, {"radius", law_to_json(q.radius_law())}};
      break;
    case GrainDistribution::Family::rect:
      j = {{"family", "rect"},
           {"halfwidth", law_to_json(q.halfwidth_law())},
           {"halfheight", law_to_json(q.halfheight_law())},
           {"rotate", q.rotate()}};
      break;
    case GrainDistribution::Family::fixed:
      j = {{"family", "fixed"}, {"shape", shape_to_json(q.shape())}, {"rotate", q.rotate()}};
      break;
  }
  j["rmax"] = q.rmax();
  return j;
}

GrainDistribution grains_from_json(const Json& j) {
  const auto& fam = field(j, "family", "grains");
  if (!fam.is_string()) fail("grains: \"family\" must be a string");
  const auto f = fam.get<std::string>();
  std::optional<double> rmax;
  if (j.contains("rmax")) rmax = number(j.at("rmax"), "grains rmax");
  auto rotate = [&]() {
    if (!j.contains("rotate")) return false;
    if (!j.at("rotate").is_boolean()) fail("grains: \"rotate\" must be true or false");
    return j.at("rotate").get<bool>();
  };
  if (f == "disk") {
    check_keys(j, {"family", "radius", "rmax"}, "disk grains");
    return GrainDistribution::disks(law_from_json(field(j, "radius", "disk grains")), rmax);
  }
  if (f == "rect") {
    check_keys(j, {"family", "halfwidth", "halfheight", "rotate", "rmax"}, "rect grains");
    return GrainDistribution::rects(law_from_json(field(j, "halfwidth", "rect grains")),
                                    law_from_json(field(j, "halfheight", "rect grains")), rotate(), rmax);
  }
  if (f == "fixed") {
    check_keys(j, {"family", "shape", "rotate", "rmax"}, "fixed grains");
    return GrainDistribution::fixed(shape_from_json(field(j, "shape", "fixed grains")), rotate(), rmax);
  }
  fail("grains: unknown family \"" + f + "\" (expected disk, rect or fixed)");
}

Json window_to_json(const Window& w) { return {{"lo", {w.lo.x, w.lo.y}}, {"hi", {w.hi.x, w.hi.y}}}; }

Window window_from_json(const Json& j) {
  if (j.is_object() && j.contains("size")) {
    check_keys(j, {"size"}, "window");
    const auto s = numbers(j.at("size"), "window size");
    if (s.size() != 2) fail("window size: expected [width, height]");
    return Window::make({0.0, 0.0}, {s[0], s[1]});
  }
  check_keys(j, {"lo", "hi"}, "window");
  return Window::make(point(field(j, "lo", "window"), "window lo"), point(field(j, "hi", "window"), "window hi"));
}

Json model_to_json(const ModelConfig& c) {
  return {{"gamma", c.gamma}, {"grains", grains_to_json(c.grains)}, {"window", window_to_json(c.window)}, {"seed", c.seed}};
}

ModelConfig model_from_json(const Json& j) {
  check_keys(j, {"gamma", "grains", "window", "seed"}, "model");
  ModelConfig c;
  if (j.contains("gamma")) c.gamma = number(j.at("gamma"), "model gamma");
  if (j.contains("grains")) c.grains = grains_from_json(j.at("grains"));
  if (j.contains("window")) c.window = window_from_json(j.at("window"));
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) fail("model seed: expected a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  return c;
}

Json experiment_to_json(const ExperimentConfig& c) {
  Json j{{"model", model_to_json(c.model)},
         {"scales", c.scales},
         {"reps", c.reps},
         {"replicate", c.replicate},
         {"functional", c.functional},
         {"tolerance", c.tolerance},
         {"resolution", c.resolution},
         {"method", c.method}};
  if (c.probe) {
    Json p{{"center", {c.probe->center.x, c.probe->center.y}}};
    p["shape"] = c.probe->shape ? shape_to_json(*c.probe->shape) : Json(nullptr);
    j["probe"] = p;
  }
  if (!c.output.empty()) j["output"] = c.output;
  if (c.threads) j["threads"] = *c.threads;
  return j;
}

ExperimentConfig experiment_from_json(const Json& j) {
  check_keys(j, {"model", "scales", "reps", "replicate", "functional", "tolerance", "resolution", "probe", "method",
                 "output", "threads"},
             "config");
  ExperimentConfig c;
  if (j.contains("model")) c.model = model_from_json(j.at("model"));
  if (j.contains("scales")) c.scales = numbers(j.at("scales"), "scales");
  auto count = [&](const char* key) -> std::uint64_t {
    if (!j.at(key).is_number_unsigned()) fail(std::string(key) + ": expected a nonnegative integer");
    return j.at(key).get<std::uint64_t>();
  };
  if (j.contains("reps")) c.reps = count("reps");
  if (j.contains("replicate")) c.replicate = count("replicate");
  if (j.contains("functional")) c.functional = static_cast<int>(count("functional"));
  if (j.contains("threads")) c.threads = static_cast<unsigned>(count("threads"));
  if (j.contains("tolerance")) c.tolerance = number(j.at("tolerance"), "tolerance");
  if (j.contains("resolution")) c.resolution = number(j.at("resolution"), "resolution");
  if (j.contains("method")) {
    if (!j.at("method").is_string()) fail("method: expected a string");
    c.method = j.at("method").get<std::string>();
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) fail("output: expected a string");
    c.output = j.at("output").get<std::string>();
  }
  if (j.contains("probe")) {
    const auto& p = j.at("probe");
    check_keys(p, {"center", "shape"}, "probe");
    Probe pr{p.contains("center") ? point(p.at("center"), "probe center") : Vec2{0.0, 0.0}, std::nullopt};
    if (p.contains("shape") && !p.at("shape").is_null()) pr.shape = shape_from_json(p.at("shape"));
    c.probe = pr;
  }
  return c;
}

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& p) {
  const auto text = read_text_file(p);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail("malformed JSON in " + p.string() + ": " + e.what());
  }
}

std::string samples_to_text(const ModelConfig& c, const std::vector<GermGrainSample>& samples) {
  std::string out = "# boolmodel-sample " + std::to_string(kFormatVersion) + "\n";
  out += "# config " + model_to_json(c).dump() + "\n";
  for (const auto& s : samples) {
    out += "# replicate " + std::to_string(s.replicate) + "\n";
    for (const auto& g : s.placed)
      out += csv_number(g.center.x) + " " + csv_number(g.center.y) + " " + shape_to_json(g.shape).dump() + "\n";
  }
  return out;
}

SampleFile samples_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  SampleFile f;
  bool have_config = false;
  std::size_t lineno = 0;
  auto where = [&] { return "sample line " + std::to_string(lineno); };
  if (!std::getline(in, line) || line != "# boolmodel-sample " + std::to_string(kFormatVersion))
    fail("sample file: missing or unsupported header (expected \"# boolmodel-sample 1\")");
  ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# config ", 0) == 0) {
      try {
        f.config_json = Json::parse(line.substr(9));
      } catch (const Json::parse_error& e) {
        fail(where() + ": malformed config: " + e.what());
      }
      f.config = model_from_json(f.config_json);
      have_config = true;
    } else if (line.rfind("# replicate ", 0) == 0) {
      if (!have_config) fail(where() + ": replicate before config");
      GermGrainSample s;
      s.config = f.config;
      try {
        s.replicate = std::stoull(line.substr(12));
      } catch (const std::exception&) {
        fail(where() + ": bad replicate index");
      }
      f.samples.push_back(std::move(s));
    } else if (line[0] == '#') {
      continue;
    } else {
      if (f.samples.empty()) fail(where() + ": grain before any replicate line");
      std::istringstream ls(line);
      double x, y;
      if (!(ls >> x >> y)) fail(where() + ": expected \"x y {shape}\"");
      std::string rest;
      std::getline(ls, rest);
      try {
        f.samples.back().placed.push_back({{x, y}, shape_from_json(Json::parse(rest))});
      } catch (const Json::parse_error& e) {
        fail(where() + ": malformed shape record: " + e.what());
      } catch (const PreconditionError& e) {
        fail(where() + ": " + e.what());
      }
    }
  }
  if (!have_config) fail("sample file: no config line");
  return f;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += csv_field(fields[i]);
  }
  return row + "\r\n";
}

std::string comment_header(const std::string& format, const Json& config) {
  return "# format " + format + " " + std::to_string(kFormatVersion) + "\n# tool boolmodel " + kToolVersion +
         "\n# config " + config.dump() + "\n";
}

void write_atomic(const std::filesystem::path& p, const std::string& content) {
  auto tmp = p;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      fail("write failed for " + p.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail("cannot rename output into " + p.string());
  }
}

}  // namespace boolmodel
