#include "nilalg/serialize.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nilalg/errors.hpp"

namespace nilalg {

namespace fs = std::filesystem;

namespace {

std::string index_text(const BigInt& i) {
  if (i > BigInt(1) << 64) {
    const std::size_t k = floor_log2(i);
    const BigInt rest = i - pow2(k);
    if (rest < BigInt(1) << 32) return "2^" + std::to_string(k) + (rest == 0 ? "" : "+" + rest.str());
  }
  return i.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw PreconditionError("cannot write " + p.string());
  out << text;
  if (!out) throw PreconditionError("failed writing " + p.string());
}

template <class T>
T get_field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what(), 0);
  }
}

}  // namespace

nlohmann::json subspace_to_json(const Subspace& s) {
  nlohmann::json j;
  j["degree"] = s.degree();
  j["field"] = s.prime();
  j["repr"] = repr_name(s.repr());
  if (s.is_monomial()) {
    auto words = nlohmann::json::array();
    for (const auto& w : s.words()) words.push_back(w.str());
    j["monomials"] = std::move(words);
  } else {
    auto rows = nlohmann::json::array();
    for (const auto& r : s.rows()) rows.push_back(r.to_hex());
    j["rows"] = std::move(rows);
  }
  return j;
}

Subspace subspace_from_json(const nlohmann::json& j) {
  const auto degree = get_field<std::size_t>(j, "degree");
  const auto p = get_field<std::uint32_t>(j, "field");
  const auto repr = get_field<std::string>(j, "repr");
  if (repr == "monomials" || repr == "complement") {
    std::vector<Monomial> words;
    for (const auto& w : get_field<std::vector<std::string>>(j, "monomials")) words.push_back(Monomial::parse(w));
    return repr == "monomials" ? Subspace::span_words(degree, p, std::move(words))
                               : Subspace::complement_words(degree, p, std::move(words));
  }
  if (repr != "dense" && repr != "annihilator") throw ParseError("unknown subspace representation '" + repr + "'", 0);
  require_dense_degree(degree, "stored subspace");
  std::vector<DenseVector> rows;
  for (const auto& h : get_field<std::vector<std::string>>(j, "rows"))
    rows.push_back(DenseVector::from_hex(h, std::uint64_t{1} << degree, p));
  return repr == "dense" ? Subspace::from_rows(degree, p, std::move(rows))
                         : Subspace::from_functionals(degree, p, std::move(rows));
}

nlohmann::json schedule_to_json(const Schedule& s) {
  nlohmann::json j;
  j["mode"] = s.mode() == Mode::real ? "real" : "toy";
  auto entries = nlohmann::json::array();
  for (const auto& e : s.entries()) {
    nlohmann::json x;
    x["i"] = index_text(e.i);
    if (e.f) x["f"] = format_poly(*e.f);
    if (e.F_basis) {
      auto F = nlohmann::json::array();
      for (const auto& b : *e.F_basis) F.push_back(format_poly(b));
      x["F"] = {{"basis", std::move(F)}};
    }
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j;
}

Schedule schedule_from_json(const nlohmann::json& j, std::uint32_t p) {
  const auto mode_text = get_field<std::string>(j, "mode");
  if (mode_text != "real" && mode_text != "toy") throw ParseError("mode must be 'real' or 'toy'", 0);
  std::vector<ScheduleEntry> entries;
  if (j.contains("entries")) {
    if (!j["entries"].is_array()) throw ParseError("'entries' must be a list", 0);
    for (const auto& e : j["entries"]) {
      ScheduleEntry x;
      if (!e.contains("i")) throw ParseError("schedule entry without 'i'", 0);
      if (e["i"].is_number_integer()) {
        if (e["i"].get<std::int64_t>() < 0 && !e["i"].is_number_unsigned()) throw ParseError("negative schedule index", 0);
        x.i = BigInt(e["i"].get<std::uint64_t>());
      } else {
        x.i = parse_index(get_field<std::string>(e, "i"));
      }
      if (e.contains("f")) x.f = parse_poly(get_field<std::string>(e, "f"), p);
      // F: {"basis": [...]}, a bare list, or "null"/null for the zero oracle.
      if (e.contains("F") && !e["F"].is_null() && e["F"] != "null") {
        const auto& F = e["F"];
        const auto texts = F.is_object() ? get_field<std::vector<std::string>>(F, "basis")
                                         : get_field<std::vector<std::string>>(e, "F");
        std::vector<GeneralPoly> basis;
        for (const auto& t : texts) basis.push_back(parse_poly(t, p));
        x.F_basis = std::move(basis);
      }
      entries.push_back(std::move(x));
    }
  }
  return Schedule(mode_text == "real" ? Mode::real : Mode::toy, std::move(entries));
}

nlohmann::json level_to_json(const LevelState& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["case"] = s.build_case;
  j["dense"] = s.dense;
  j["U"] = subspace_to_json(s.U);
  j["V"] = subspace_to_json(s.V);
  j["N"] = subspace_to_json(s.N);
  j["M"] = subspace_to_json(s.M);
  if (s.m1) j["m1"] = s.m1->str();
  if (s.m2) j["m2"] = s.m2->str();
  return j;
}

LevelState level_from_json(const nlohmann::json& j) {
  LevelState s;
  s.n = get_field<std::size_t>(j, "n");
  s.build_case = get_field<int>(j, "case");
  s.dense = get_field<bool>(j, "dense");
  s.U = subspace_from_json(get_field<nlohmann::json>(j, "U"));
  s.V = subspace_from_json(get_field<nlohmann::json>(j, "V"));
  s.N = subspace_from_json(get_field<nlohmann::json>(j, "N"));
  s.M = subspace_from_json(get_field<nlohmann::json>(j, "M"));
  if (j.contains("m1")) s.m1 = Monomial::parse(get_field<std::string>(j, "m1"));
  if (j.contains("m2")) s.m2 = Monomial::parse(get_field<std::string>(j, "m2"));
  return s;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::string out;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

std::string canonical_text(const nlohmann::json& j) { return j.dump() + "\n"; }

std::string level_file_name(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "level_%02zu.json", n);
  return buf;
}

nlohmann::json manifest_to_json(const StoreManifest& m) {
  nlohmann::json j;
  j["format"] = "nilalg-level-store/1";
  j["schedule"] = m.schedule;
  j["schedule_sha256"] = m.schedule_sha256;
  j["field"] = m.field;
  j["engine"] = engine_name(m.engine);
  auto levels = nlohmann::json::array();
  for (const auto& e : m.levels)
    levels.push_back({{"n", e.n}, {"case", e.build_case}, {"dense", e.dense}, {"file", e.file}, {"sha256", e.sha256}});
  j["levels"] = std::move(levels);
  return j;
}

StoreManifest manifest_from_json(const nlohmann::json& j) {
  StoreManifest m;
  m.schedule = get_field<nlohmann::json>(j, "schedule");
  m.schedule_sha256 = get_field<std::string>(j, "schedule_sha256");
  m.field = get_field<std::uint32_t>(j, "field");
  m.engine = parse_engine(get_field<std::string>(j, "engine"));
  for (const auto& e : get_field<nlohmann::json>(j, "levels"))
    m.levels.push_back({get_field<std::size_t>(e, "n"), get_field<int>(e, "case"), get_field<bool>(e, "dense"),
                        get_field<std::string>(e, "file"), get_field<std::string>(e, "sha256")});
  return m;
}

std::string save_store(const fs::path& dir, const Levels& levels) {
  fs::create_directories(dir);
  StoreManifest m;
  m.schedule = schedule_to_json(levels.schedule());
  m.schedule_sha256 = sha256_hex(canonical_text(m.schedule));
  m.field = levels.prime();
  m.engine = levels.engine();
  for (const auto& s : levels.states()) {
    const std::string text = canonical_text(level_to_json(s));
    const std::string name = level_file_name(s.n);
    write_file(dir / name, text);
    m.levels.push_back({s.n, s.build_case, s.dense, name, sha256_hex(text)});
  }
  const std::string manifest = canonical_text(manifest_to_json(m));
  write_file(dir / "manifest.json", manifest);
  return sha256_hex(manifest);
}

LoadedStore load_store(const fs::path& dir) {
  const fs::path mpath = dir / "manifest.json";
  if (!fs::exists(mpath)) throw PreconditionError("no level store at " + dir.string() + " (manifest.json missing)");
  LoadedStore out;
  try {
    out.manifest = manifest_from_json(nlohmann::json::parse(read_file(mpath)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest.json: ") + e.what(), e.byte);
  }
  if (out.manifest.levels.empty()) throw PreconditionError("level store at " + dir.string() + " is empty");
  for (const auto& e : out.manifest.levels) {
    const std::string text = read_file(dir / e.file);
    if (sha256_hex(text) != e.sha256) out.hash_mismatches.push_back(e.file);
    try {
      out.levels.push_back(level_from_json(nlohmann::json::parse(text)));
    } catch (const nlohmann::json::parse_error& err) {
      throw ParseError(e.file + ": " + err.what(), err.byte);
    }
  }
  return out;
}

}  // namespace nilalg
