#include "resdirac/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "resdirac/numerics.hpp"

namespace resdirac::io {

using nlohmann::json;

namespace {

json pairs(const std::vector<cplx>& v) {
  json a = json::array();
  for (const cplx& c : v) a.push_back({c.real(), c.imag()});
  return a;
}

std::vector<cplx> unpairs(const json& a) {
  if (!a.is_array()) throw ValidationError("parse", "expected an array of [re, im] pairs");
  std::vector<cplx> v;
  v.reserve(a.size());
  for (const auto& p : a) {
    if (!p.is_array() || p.size() != 2) throw ValidationError("parse", "expected [re, im] pair");
    v.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return v;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("parse", e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ValidationError("parse", e.what());
  }
}

Grid checked_grid(double left, double right, int n, std::size_t count) {
  if (count != static_cast<std::size_t>(n) + 1)
    throw ValidationError("parse", "sample count must be n + 1");
  return make_grid(left, right, n);
}

}  // namespace

std::string to_json(const Potential& q) {
  json j{{"gamma", q.gamma}, {"n", q.n()}, {"samples", pairs(q.samples.values)}};
  if (q.carrier != 0.0) j["carrier"] = q.carrier;
  return j.dump(1);
}

std::string to_json(const JostRep& rep) {
  json j{{"alpha", rep.alpha.alpha}, {"gamma", rep.gamma}, {"n", rep.g.grid.n}, {"g", pairs(rep.g.values)}};
  return j.dump(1);
}

std::string to_json(const ScatteringRep& S) {
  json j{{"alpha", S.alpha.alpha}, {"gamma", S.gamma}, {"t_max", S.t_max},
         {"left", S.F.grid.left}, {"n", S.F.grid.n}, {"kernel", pairs(S.F.values)}};
  return j.dump(1);
}

std::string to_json(const ResonanceSet& R, double r_cut) {
  json z = json::array();
  for (const auto& e : R.entries) {
    json o{{"re", e.z.real()}, {"im", e.z.imag()}, {"mult", e.multiplicity}};
    if (e.boundary_ambiguous) o["boundary_ambiguous"] = true;
    z.push_back(o);
  }
  json j{{"zeros", z}};
  if (r_cut > 0) j["r_cut"] = r_cut;
  return j.dump(1);
}

std::string to_json(const Hamiltonian& H) {
  json j{{"gamma", H.gamma}, {"a", H.a}, {"b", H.b}};
  return j.dump(1);
}

Potential potential_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    const double gamma = j.at("gamma").get<double>();
    const int n = j.at("n").get<int>();
    auto v = unpairs(j.at("samples"));
    if (v.size() != static_cast<std::size_t>(n) + 1) throw ValidationError("parse", "sample count must be n + 1");
    return Potential(gamma, std::move(v), j.value("carrier", 0.0));
  });
}

JostRep jostrep_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    JostRep rep;
    rep.alpha = BoundaryParam(j.at("alpha").get<double>());
    rep.gamma = j.at("gamma").get<double>();
    const int n = j.at("n").get<int>();
    auto v = unpairs(j.at("g"));
    const Grid grid = checked_grid(0.0, rep.gamma, n, v.size());
    rep.g = Sampled(grid, std::move(v));
    return rep;
  });
}

ScatteringRep scattering_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    ScatteringRep S;
    S.alpha = BoundaryParam(j.at("alpha").get<double>());
    S.gamma = j.at("gamma").get<double>();
    S.t_max = j.at("t_max").get<double>();
    const double left = j.value("left", -S.gamma);
    const int n = j.at("n").get<int>();
    auto v = unpairs(j.at("kernel"));
    const Grid grid = checked_grid(left, S.t_max, n, v.size());
    S.F = Sampled(grid, std::move(v));
    return S;
  });
}

ResonanceSet resonances_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    ResonanceSet R;
    for (const auto& o : j.at("zeros")) {
      Resonance e;
      e.z = cplx(o.at("re").get<double>(), o.at("im").get<double>());
      e.multiplicity = o.value("mult", 1);
      e.boundary_ambiguous = o.value("boundary_ambiguous", false);
      if (!(e.z.imag() < 0)) throw ValidationError("parse", "resonances must lie in the lower half-plane");
      if (e.multiplicity < 1) throw ValidationError("parse", "multiplicity must be positive");
      R.entries.push_back(e);
    }
    R.normalize();
    return R;
  });
}

Hamiltonian hamiltonian_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    Hamiltonian H;
    H.gamma = j.at("gamma").get<double>();
    H.a = j.at("a").get<std::vector<double>>();
    H.b = j.at("b").get<std::vector<double>>();
    if (H.a.size() < 2 || H.a.size() != H.b.size())
      throw ValidationError("parse", "a and b must have equal length of at least 2");
    H.grid = make_grid(0.0, H.gamma, static_cast<int>(H.a.size()) - 1);
    return H;
  });
}

std::vector<ResonanceMove> moves_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded([&] {
    const json& list = j.is_object() ? j.at("moves") : j;
    std::vector<ResonanceMove> out;
    for (const auto& m : list) {
      const json& f = m.at("from");
      const json& t = m.at("to");
      out.push_back({cplx(f.at("re").get<double>(), f.at("im").get<double>()),
                     cplx(t.at("re").get<double>(), t.at("im").get<double>())});
    }
    return out;
  });
}

std::string detect_kind(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) return "";
  if (j.contains("zeros")) return "resonances";
  if (j.contains("kernel")) return "scattering";
  if (j.contains("g")) return "jostrep";
  if (j.contains("samples")) return "potential";
  if (j.contains("a") && j.contains("b")) return "hamiltonian";
  return "";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("io", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("io", "cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

}  // namespace resdirac::io
