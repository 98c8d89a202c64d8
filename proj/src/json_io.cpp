#include "gcis/json_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <fstream>

#include "gcis/errors.hpp"

namespace gcis {

namespace {

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ConfigInvalid, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("bad value for '") + key + "': " + e.what());
  }
}

template <class T>
T optional_value(const json& j, const char* key, T fallback) {
  return j.contains(key) ? required<T>(j, key) : fallback;
}

// inf and nan have no JSON form; nlohmann writes them as null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

NodeSequence sequence_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "sequence spec must be an object");
  const auto kind = required<std::string>(j, "kind");
  if (kind == "affine") {
    return NodeSequence::affine(optional_value(j, "alpha", 1.0), optional_value(j, "beta", 0.0));
  }
  if (kind == "periodic") {
    auto offsets = required<std::vector<double>>(j, "offsets");
    if (j.contains("period") && required<std::size_t>(j, "period") != offsets.size()) {
      throw Error(ErrorCode::ConfigInvalid, "period does not match the number of offsets");
    }
    return NodeSequence::periodic(std::move(offsets));
  }
  if (kind == "explicit") {
    auto nodes = required<std::vector<double>>(j, "nodes");
    std::int64_t lo = 0;
    if (j.contains("index_range")) {
      const auto r = required<std::vector<std::int64_t>>(j, "index_range");
      if (r.empty() || r.size() > 2) throw Error(ErrorCode::ConfigInvalid, "index_range must be [lo] or [lo, hi]");
      lo = r[0];
      if (r.size() == 2 && r[1] - r[0] + 1 != static_cast<std::int64_t>(nodes.size())) {
        throw Error(ErrorCode::ConfigInvalid, "index_range does not match the node count");
      }
    }
    return NodeSequence::explicit_window(lo, std::move(nodes));
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown sequence kind '" + kind + "'");
}

json sequence_to_json(const NodeSequence& seq) {
  return std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, AffineGrid>) {
          return {{"kind", "affine"}, {"alpha", k.alpha}, {"beta", k.beta}};
        } else if constexpr (std::is_same_v<K, PeriodicPerturbation>) {
          return {{"kind", "periodic"}, {"period", k.offsets.size()}, {"offsets", k.offsets}};
        } else {
          const auto hi = k.index_lo + static_cast<std::int64_t>(k.nodes.size()) - 1;
          return {{"kind", "explicit"}, {"index_range", {k.index_lo, hi}}, {"nodes", k.nodes}};
        }
      },
      seq.kind());
}

json to_json(const AvdoninVerdict& v) {
  return {{"separated", v.separated},
          {"min_gap", number(v.min_gap)},
          {"enumerable", v.enumerable},
          {"offset", v.offset},
          {"delta_sup", number(v.delta_sup)},
          {"best_window", {{"n", v.best_window.n}, {"delta_star", number(v.best_window.delta_star)}}},
          {"passes", v.passes},
          {"caveat", to_string(v.caveat)}};
}

json to_json(const FockVerdict& v) {
  return {{"gamma", number(v.gamma)},
          {"separated", v.separated},
          {"delta_sup", number(v.delta_sup)},
          {"best_window", {{"n", v.best_window.n}, {"delta_star", number(v.best_window.delta_star)}}},
          {"passes", v.passes},
          {"caveat", to_string(v.caveat)},
          {"modulus_only", true}};
}

json to_json(const DensityEstimate& d) {
  json sweep = json::array();
  for (const auto& s : d.sweep) sweep.push_back({{"r", s.r}, {"d_plus", s.d_plus}, {"d_minus", s.d_minus}});
  return {{"d_plus", d.d_plus},
          {"d_minus", d.d_minus},
          {"method", to_string(d.method)},
          {"sweep", sweep},
          {"max_successive_change", d.max_successive_change}};
}

json to_json(const FrameBoundReport& r) {
  json records = json::array();
  for (const auto& x : r.records) {
    records.push_back({{"m", x.m},
                       {"rows", x.rows},
                       {"cols", x.cols},
                       {"sigma_min", number(x.sigma_min)},
                       {"sigma_max", number(x.sigma_max)}});
  }
  json ratios = json::array();
  for (double x : r.trend_ratios) ratios.push_back(number(x));
  return {{"orientation", to_string(r.orientation)},
          {"interior_fraction", r.interior_fraction},
          {"records", records},
          {"trend_ratios", ratios}};
}

json to_json(const CoefficientVector& c) {
  std::vector<double> re, im;
  for (const auto& v : c.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"n_lo", c.n_lo}, {"re", re}, {"im", im}};
}

CoefficientVector coefficients_from_json(const json& j) {
  CoefficientVector c;
  c.n_lo = required<std::int64_t>(j, "n_lo");
  const auto re = required<std::vector<double>>(j, "re");
  const auto im = optional_value(j, "im", std::vector<double>(re.size(), 0.0));
  if (im.size() != re.size()) throw Error(ErrorCode::ConfigInvalid, "re and im lengths differ");
  for (std::size_t i = 0; i < re.size(); ++i) c.values.emplace_back(re[i], im[i]);
  c.validate();
  return c;
}

json to_json(const InterpolationResult& r) {
  return {{"coeffs", to_json(r.coeffs)},
          {"residual", number(r.residual)},
          {"sigma_min", number(r.sigma_min)},
          {"sigma_max", number(r.sigma_max)},
          {"norm_ratio", number(r.norm_ratio)}};
}

json to_json(const FockSeries& f) {
  json out = json::array();
  for (const auto& b : f.coeffs) out.push_back({number(b.log_mag), b.phase});
  return out;
}

FockSeries fock_series_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ConfigInvalid, "Fock series must be an array");
  FockSeries f;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ConfigInvalid, "Fock coefficient must be a pair");
    LogPolarValue v;
    v.log_mag = e[0].is_null() ? kNegInf : e[0].get<double>();
    v.phase = e[1].get<double>();
    f.coeffs.push_back(v);
  }
  return f;
}

namespace {

constexpr std::array<char, 8> kMagic{'G', 'C', 'I', 'S', 'M', 'A', 'T', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(bytes.data(), 8);
}

std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), 8)) throw Error(ErrorCode::ConfigInvalid, "truncated matrix file");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

void write_matrix_binary(const CollocationMatrix& m, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::ConfigInvalid, "cannot open " + path.string());
  os.write(kMagic.data(), kMagic.size());
  for (auto v : {m.rows.lo, m.rows.hi, m.cols.lo, m.cols.hi}) put_u64(os, static_cast<std::uint64_t>(v));
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.entries.cols(); ++k) {
      put_u64(os, std::bit_cast<std::uint64_t>(m.entries(i, k).real()));
      put_u64(os, std::bit_cast<std::uint64_t>(m.entries(i, k).imag()));
    }
  }
}

CollocationMatrix read_matrix_binary(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::ConfigInvalid, "cannot open " + path.string());
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (magic != kMagic) throw Error(ErrorCode::ConfigInvalid, "not a matrix file");
  CollocationMatrix m;
  m.rows.lo = static_cast<std::int64_t>(get_u64(is));
  m.rows.hi = static_cast<std::int64_t>(get_u64(is));
  m.cols.lo = static_cast<std::int64_t>(get_u64(is));
  m.cols.hi = static_cast<std::int64_t>(get_u64(is));
  m.entries.resize(static_cast<Eigen::Index>(m.rows.size()), static_cast<Eigen::Index>(m.cols.size()));
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.entries.cols(); ++k) {
      const double re = std::bit_cast<double>(get_u64(is));
      const double im = std::bit_cast<double>(get_u64(is));
      m.entries(i, k) = {re, im};
    }
  }
  return m;
}

}  // namespace gcis
