#include "cqsl/cli/protocol_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cqsl/error.hpp"

namespace cqsl::cli {

namespace {

using nlohmann::json;

std::size_t line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

class Reader {
 public:
  Reader(std::string_view text, const json& doc) : text_(text), doc_(doc) {}

  [[noreturn]] void fail(const std::string& field, const std::string& why) const {
    const std::size_t at = text_.find("\"" + field + "\"");
    const std::string where = at == std::string_view::npos ? "" : "line " + std::to_string(line_at(text_, at)) + ": ";
    throw Error(Errc::ParseError, where + "field '" + field + "': " + why);
  }

  const json& field(const std::string& name) const {
    const auto it = doc_.find(name);
    if (it == doc_.end()) throw Error(Errc::ParseError, "missing field '" + name + "'");
    return *it;
  }

  bool has(const std::string& name) const { return doc_.contains(name); }

  double number(const json& v, const std::string& name) const {
    if (!v.is_number()) fail(name, "expected a number, got " + v.dump());
    return v.get<double>();
  }

  Complex complex_pair(const json& v, const std::string& name) const {
    if (!v.is_array() || v.size() != 2) fail(name, "expected a [re, im] pair, got " + v.dump());
    return {number(v[0], name), number(v[1], name)};
  }

  std::vector<Complex> complex_list(const json& v, const std::string& name, std::size_t expected) const {
    if (!v.is_array()) fail(name, "expected a list of [re, im] pairs");
    if (v.size() != expected) {
      fail(name, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
    }
    std::vector<Complex> out;
    out.reserve(expected);
    for (const auto& e : v) out.push_back(complex_pair(e, name));
    return out;
  }

  ComplexMatrix matrix(const std::string& name, std::size_t dim) const {
    ComplexMatrix m(dim, complex_list(field(name), name, dim * dim));
    if (hermiticity_defect(m) > kHermitianTolerance) fail(name, "operator is not Hermitian");
    return m;
  }

 private:
  std::string_view text_;
  const json& doc_;
};

}  // namespace

std::vector<Scenario> ProtocolFile::scenarios(const std::vector<double>& grid) const {
  std::vector<Scenario> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double tau = grid[i];
    Protocol p = is_static ? Protocol::constant(h) : Protocol::rqa(h_i, h_x, h_p, tau);
    out.push_back({"custom-" + std::to_string(i), initial, std::move(p), tau});
  }
  return out;
}

ProtocolFile parse_protocol(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, "line " + std::to_string(line_at(text, e.byte == 0 ? 0 : e.byte - 1)) +
                                      ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw Error(Errc::ParseError, "line 1: top level must be an object");
  const Reader r(text, doc);
  ProtocolFile pf;

  const json& dim = r.field("dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) r.fail("dim", "expected a positive integer");
  pf.dim = dim.get<std::size_t>();

  const json& kind = r.field("kind");
  if (kind == "static") {
    pf.is_static = true;
    pf.h = r.matrix("H", pf.dim);
  } else if (kind == "rqa") {
    pf.is_static = false;
    pf.h_i = r.matrix("H_i", pf.dim);
    pf.h_x = r.matrix("H_x", pf.dim);
    pf.h_p = r.matrix("H_p", pf.dim);
  } else {
    r.fail("kind", "expected \"static\" or \"rqa\", got " + kind.dump());
  }

  const json& init = r.field("initial");
  if (!init.is_object() || init.size() != 1) r.fail("initial", "expected {\"pure\": ...} or {\"mixed\": ...}");
  try {
    if (init.contains("pure")) {
      pf.initial = DensityMatrix::from_pure(PureState::normalized(r.complex_list(init["pure"], "pure", pf.dim)));
    } else if (init.contains("mixed")) {
      const json& mixed = init["mixed"];
      if (!mixed.is_array() || mixed.empty()) r.fail("mixed", "expected a non-empty list of [weight, index] pairs");
      const Spectrum spec = hermitian_eig(pf.is_static ? pf.h : pf.h_i);
      std::vector<double> weights;
      std::vector<PureState> states;
      for (const auto& e : mixed) {
        if (!e.is_array() || e.size() != 2 || !e[1].is_number_integer()) {
          r.fail("mixed", "expected [weight, eigenstate index], got " + e.dump());
        }
        const long long idx = e[1].get<long long>();
        if (idx < 0 || static_cast<std::size_t>(idx) >= pf.dim) r.fail("mixed", "eigenstate index out of range");
        weights.push_back(r.number(e[0], "mixed"));
        states.push_back(PureState::normalized(spec.eigenvector(static_cast<std::size_t>(idx))));
      }
      pf.initial = DensityMatrix::mixture(weights, states);
    } else {
      r.fail("initial", "expected \"pure\" or \"mixed\"");
    }
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    r.fail("initial", std::string(e.what()));
  }

  if (r.has("tau_grid")) {
    const json& grid = r.field("tau_grid");
    if (!grid.is_array()) r.fail("tau_grid", "expected a list of numbers");
    for (const auto& t : grid) pf.tau_grid.push_back(r.number(t, "tau_grid"));
  }
  if (r.has("bounds")) {
    const json& bounds = r.field("bounds");
    if (!bounds.is_array()) r.fail("bounds", "expected a list of bound names");
    for (const auto& b : bounds) {
      if (!b.is_string()) r.fail("bounds", "expected a bound name, got " + b.dump());
      pf.bounds.push_back(b.get<std::string>());
    }
  }
  return pf;
}

ProtocolFile load_protocol_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_protocol(buf.str());
}

}  // namespace cqsl::cli
