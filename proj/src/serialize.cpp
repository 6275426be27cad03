#include "drinfeld/serialize.hpp"

#include <charconv>
#include <numeric>

namespace drinfeld {

namespace {

int hex_width(const Field& F) {
  std::uint32_t top = F.card() - 1;
  int w = 1;
  while (top > 0xF) {
    top >>= 4;
    ++w;
  }
  return w;
}

void append_hex(std::string* out, fq code, int width) {
  static const char* digits = "0123456789abcdef";
  for (int i = width - 1; i >= 0; --i)
    out->push_back(digits[(code >> (4 * i)) & 0xF]);
}

fq parse_hex(const std::string& s, size_t pos, int width, std::uint32_t card) {
  std::uint32_t v = 0;
  for (int i = 0; i < width; ++i) {
    char c = s[pos + static_cast<size_t>(i)];
    std::uint32_t d;
    if (c >= '0' && c <= '9') d = static_cast<std::uint32_t>(c - '0');
    else if (c >= 'a' && c <= 'f') d = static_cast<std::uint32_t>(c - 'a' + 10);
    else throw DomainError("bad hex digit in coeffs");
    v = (v << 4) | d;
  }
  if (v >= card) throw DomainError("element code out of range");
  return static_cast<fq>(v);
}

std::string rational(std::int64_t knum, int m) {
  if (knum >= kExactPrec) return "exact";
  return exp_str(knum, m);
}

std::int64_t parse_rational(const std::string& s, int m) {
  if (s == "exact") return kExactPrec;
  size_t slash = s.find('/');
  std::int64_t a = 0, b = 1;
  auto parse_int = [](const std::string& t, std::int64_t* out) {
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), *out);
    if (ec != std::errc() || ptr != t.data() + t.size())
      throw DomainError("bad integer in exponent: " + t);
  };
  if (slash == std::string::npos) {
    parse_int(s, &a);
  } else {
    parse_int(s.substr(0, slash), &a);
    parse_int(s.substr(slash + 1), &b);
  }
  if (b <= 0 || m % b != 0) throw DomainError("exponent denominator does not divide m");
  return a * (m / b);
}

// field=value chunk split on "; "
std::string expect_field(const std::string& line, size_t* pos, const char* key) {
  std::string want = std::string(key) + "=";
  if (line.compare(*pos, want.size(), want) != 0)
    throw DomainError(std::string("expected '") + key + "=' in series text");
  size_t start = *pos + want.size();
  size_t end = line.find(';', start);
  std::string out;
  if (end == std::string::npos) {
    out = line.substr(start);
    *pos = line.size();
  } else {
    out = line.substr(start, end - start);
    *pos = end + 1;
    while (*pos < line.size() && line[*pos] == ' ') ++*pos;
  }
  return out;
}

}  // namespace

std::string series_to_text(const Series& x) {
  if (x.null()) throw DomainError("cannot serialize a null series");
  const Ctx& C = *x.ctx();
  std::string out = "v=" + rational(x.vnum_raw(), C.m());
  out += "; prec=" + rational(x.prec(), C.m());
  out += "; coeffs=";
  int w = hex_width(C.field());
  for (fq c : x.digits()) append_hex(&out, c, w);
  return out;
}

Series series_from_text(const Ctx& C, const std::string& line) {
  size_t pos = 0;
  std::int64_t v = parse_rational(expect_field(line, &pos, "v"), C.m());
  std::int64_t prec = parse_rational(expect_field(line, &pos, "prec"), C.m());
  std::string hex = expect_field(line, &pos, "coeffs");
  if (pos != line.size()) throw DomainError("trailing characters in series text");
  int w = hex_width(C.field());
  if (hex.size() % static_cast<size_t>(w) != 0)
    throw DomainError("coeffs length is not a multiple of the element width");
  std::vector<fq> d;
  d.reserve(hex.size() / static_cast<size_t>(w));
  for (size_t i = 0; i < hex.size(); i += static_cast<size_t>(w))
    d.push_back(parse_hex(hex, i, w, C.field().card()));
  return Series::make(C, v, std::move(d), prec);
}

ojson series_to_json(const Series& x) {
  if (x.null()) throw DomainError("cannot serialize a null series");
  const Ctx& C = *x.ctx();
  ojson j;
  j["val"] = rational(x.vnum_raw(), C.m());
  j["prec"] = rational(x.prec(), C.m());
  j["coeffs"] = x.digits();
  return j;
}

Series series_from_json(const Ctx& C, const ojson& j) {
  std::int64_t v = parse_rational(j.at("val").get<std::string>(), C.m());
  std::int64_t prec = parse_rational(j.at("prec").get<std::string>(), C.m());
  std::vector<fq> d;
  for (const auto& c : j.at("coeffs")) {
    std::uint32_t code = c.get<std::uint32_t>();
    if (code >= C.field().card()) throw DomainError("element code out of range");
    d.push_back(static_cast<fq>(code));
  }
  return Series::make(C, v, std::move(d), prec);
}

ojson module_to_json(const DrinfeldModule& phi) {
  ojson j;
  j["r"] = phi.rank();
  ojson g = ojson::array();
  for (int i = 1; i <= phi.rank(); ++i) g.push_back(series_to_json(phi.g(i)));
  j["g"] = std::move(g);
  return j;
}

DrinfeldModule module_from_json(const Ctx& C, const ojson& j) {
  int r = j.at("r").get<int>();
  const ojson& g = j.at("g");
  if (r <= 0 || static_cast<size_t>(r) != g.size())
    throw DomainError("module rank does not match its coefficient list");
  std::vector<Series> gs;
  for (const auto& e : g) gs.push_back(series_from_json(C, e));
  return DrinfeldModule(C, std::move(gs));
}

ojson entire_to_json(const EntireSeries& f) {
  ojson j;
  j["kmax"] = f.kmax();
  ojson c = ojson::array();
  for (int k = 0; k <= f.kmax(); ++k) c.push_back(series_to_json(f.coeff(k)));
  j["c"] = std::move(c);
  return j;
}

EntireSeries entire_from_json(const Ctx& C, const ojson& j) {
  std::vector<Series> c;
  for (const auto& e : j.at("c")) c.push_back(series_from_json(C, e));
  if (j.at("kmax").get<int>() != static_cast<int>(c.size()) - 1)
    throw DomainError("entire series kmax does not match its coefficient list");
  return EntireSeries(C, std::move(c));
}

ojson certificate_to_json(const RelationCertificate& cert, int m) {
  ojson j;
  ojson P = ojson::array();
  for (const auto& c : cert.coeffs) P.push_back(c.coeffs());
  j["P"] = std::move(P);
  j["val"] = rational(cert.achieved_val, m);
  j["bounds"] = ojson{{"deg_x", cert.deg_x},
                      {"deg_theta", cert.deg_theta},
                      {"vt", rational(cert.vt_num, m)}};
  j["prec"] = rational(cert.prec_num, m);
  return j;
}

ojson cm_point_to_json(const CMPoint& pt) {
  ojson j;
  ojson w = ojson::array();
  for (const auto& wi : pt.omega.w) w.push_back(series_to_json(wi));
  j["omega"] = std::move(w);
  j["multiplier"] = series_to_json(pt.multiplier);
  ojson M = ojson::array();
  for (const auto& row : pt.M) {
    ojson r = ojson::array();
    for (const auto& p : row) r.push_back(p.coeffs());
    M.push_back(std::move(r));
  }
  j["M"] = std::move(M);
  j["separation"] = pt.omega.iota_val;
  j["tested_degree"] = pt.omega.tested_degree;
  return j;
}

}  // namespace drinfeld
