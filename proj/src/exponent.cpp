#include "ccmm/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace ccmm {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Root of an increasing f on [2, 3]; out-of-range roots are clamped.
struct Root {
  double value;
  int side;  // -1 below 2, +1 above 3, 0 inside
};

template <class F>
Root bisect(F f) {
  if (f(2.0) > 0) return {2.0, -1};
  if (f(3.0) < 0) return {3.0, 1};
  double lo = 2.0, hi = 3.0;
  for (int it = 0; it < kBisectionIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return {hi, 0};
}

double clamp_exponent(double v) { return std::clamp(v, 2.0, 3.0); }

// Slack so that exact values like 3 ln 25 / ln 125 = 2 are not flagged.
constexpr double kSlack = 1e-12;

std::string clamp_note(double raw) {
  if (raw > 3 + kSlack) return "raw " + num(raw) + " above 3, vacuous";
  if (raw < 2 - kSlack) return "raw " + num(raw) + " below 2, instance impossible";
  return "";
}

void flag_clamp(ExponentBound& b, double raw) {
  if (raw > 3 + kSlack) b.flags.push_back("vacuous");
  if (raw < 2 - kSlack) b.flags.push_back("below-2");
}

double asi_eval(const std::vector<double>& in, std::string* note) {
  const double r = in.at(0);
  std::vector<double> x(in.begin() + 1, in.end());
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 1; })) {
    if (note) *note = "all blocks trivial, no information";
    return 3.0;
  }
  const Root root = bisect([&](double t) {
    double s = 0;
    for (double v : x) s += std::pow(v, t / 3);
    return s - r;
  });
  if (note) *note = root.side < 0 ? "root below 2, instance impossible" : root.side > 0 ? "root above 3, vacuous" : "";
  return root.value;
}

double geomean_eval(const std::vector<double>& in, std::string* note) {
  const double r = in.at(0);
  const double k = static_cast<double>(in.size() - 1);
  double logsum = 0;
  for (std::size_t i = 1; i < in.size(); ++i) logsum += std::log(in[i]);
  if (logsum == 0) {
    if (note) *note = "all blocks trivial, no information";
    return 3.0;
  }
  const double g = std::exp(logsum / k);
  const Root root = bisect([&](double t) { return k * std::pow(g, t / 3) - r; });
  if (note) *note = root.side < 0 ? "root below 2, instance impossible" : root.side > 0 ? "root above 3, vacuous" : "";
  return root.value;
}

std::vector<double> block_inputs(const std::vector<Block>& blocks, std::uint64_t r) {
  if (blocks.empty()) throw std::invalid_argument("at least one block is required");
  if (blocks.size() > r) throw std::invalid_argument("more blocks than the rank");
  std::vector<double> in{static_cast<double>(r)};
  for (const auto& b : blocks) {
    if (b[0] == 0 || b[1] == 0 || b[2] == 0) throw std::invalid_argument("block dims must be positive");
    in.push_back(static_cast<double>(b[0]) * static_cast<double>(b[1]) * static_cast<double>(b[2]));
  }
  return in;
}

ExponentBound single_step(BoundKind kind, const std::string& rule, std::vector<double> inputs, std::string note) {
  ExponentBound b;
  b.kind = kind;
  b.value = evaluate_rule(rule, inputs);
  b.provenance.push_back({rule, std::move(inputs), b.value, std::move(note)});
  return b;
}

}  // namespace

double evaluate_rule(const std::string& rule, const std::vector<double>& in) {
  if (rule == "commutative") {
    const double lmn = in.at(0) * in.at(1) * in.at(2);
    return clamp_exponent(3 * std::log(in.at(3)) / std::log(lmn));
  }
  if (rule == "asi") return asi_eval(in, nullptr);
  if (rule == "geomean") return geomean_eval(in, nullptr);
  if (rule == "noncommutative") {
    const double lmn = in.at(0) * in.at(1) * in.at(2), w = in.at(3);
    double s = 0;
    for (std::size_t i = 4; i < in.size(); ++i) s += std::pow(in[i], w);
    return clamp_exponent(3 * std::log(s) / std::log(lmn));
  }
  if (rule == "cksu") {
    const double m = in.at(0);
    return (3 * std::log(m) - std::log(27.0 / 4.0)) / std::log(m - 2);
  }
  if (rule == "convert") return clamp_exponent((3 * in.at(0) - 2) / 2);
  if (rule == "given") return in.at(0);
  throw std::invalid_argument("unknown provenance rule '" + rule + "'");
}

ExponentBound omega_s_commutative(std::uint64_t l, std::uint64_t m, std::uint64_t n, std::uint64_t r) {
  if (l == 0 || m == 0 || n == 0) throw std::invalid_argument("dims must be positive");
  if (l * m * n < 2) throw std::invalid_argument("lmn must be at least 2");
  if (r == 0) throw std::invalid_argument("rank must be positive");
  const double raw = 3 * std::log(static_cast<double>(r)) / std::log(static_cast<double>(l * m * n));
  auto b = single_step(BoundKind::omega_s, "commutative",
                       {double(l), double(m), double(n), double(r)}, clamp_note(raw));
  flag_clamp(b, raw);
  return b;
}

ExponentBound solve_asi(const std::vector<Block>& blocks, std::uint64_t r) {
  auto in = block_inputs(blocks, r);
  std::string note;
  asi_eval(in, &note);
  auto b = single_step(BoundKind::omega_s, "asi", std::move(in), note);
  if (!note.empty()) b.flags.push_back(note.find("trivial") != std::string::npos ? "degenerate"
                                       : note.find("below") != std::string::npos ? "below-2" : "vacuous");
  return b;
}

ExponentBound geometric_mean_bound(const std::vector<Block>& blocks, std::uint64_t r) {
  auto in = block_inputs(blocks, r);
  std::string note;
  geomean_eval(in, &note);
  auto b = single_step(BoundKind::omega_s, "geomean", std::move(in), note);
  if (!note.empty()) b.flags.push_back(note.find("trivial") != std::string::npos ? "degenerate"
                                       : note.find("below") != std::string::npos ? "below-2" : "vacuous");
  return b;
}

ExponentBound omega_s_noncommutative(std::uint64_t l, std::uint64_t m, std::uint64_t n,
                                     const std::vector<std::uint32_t>& degrees, double assumed) {
  if (degrees.empty()) throw std::invalid_argument("degree profile is empty");
  if (l == 0 || m == 0 || n == 0 || l * m * n < 2) throw std::invalid_argument("lmn must be at least 2");
  if (!(assumed >= 2 && assumed <= 3)) throw std::invalid_argument("assumed omega must lie in [2, 3]");
  std::vector<double> in{double(l), double(m), double(n), assumed};
  double s = 0;
  for (auto d : degrees) {
    if (d == 0) throw std::invalid_argument("degrees must be positive");
    in.push_back(d);
    s += std::pow(double(d), assumed);
  }
  const double raw = 3 * std::log(s) / std::log(double(l * m * n));
  const bool all_one = std::all_of(degrees.begin(), degrees.end(), [](auto d) { return d == 1; });
  auto b = single_step(BoundKind::omega_s, "noncommutative", std::move(in), clamp_note(raw));
  if (!all_one) b.assumptions.push_back("omega <= " + num(assumed));
  flag_clamp(b, raw);
  return b;
}

ExponentBound omega_from_omega_s(const ExponentBound& in) {
  if (in.kind != BoundKind::omega_s) throw std::invalid_argument("conversion needs a bound on omega_s");
  ExponentBound b = in;
  b.kind = BoundKind::omega;
  const double raw = (3 * in.value - 2) / 2;
  b.value = evaluate_rule("convert", {in.value});
  b.provenance.push_back({"convert", {in.value}, b.value, clamp_note(raw)});
  if (raw > 3 + kSlack) b.flags.push_back("vacuous");
  return b;
}

ExponentBound cksu_formula(double m) {
  if (!(m > 2)) throw std::invalid_argument("cksu formula needs m > 2");
  if (m == 3) throw std::invalid_argument("cksu formula is undefined at m = 3 (log(m-2) = 0)");
  return single_step(BoundKind::omega_s, "cksu", {m}, "");
}

ExponentBound given_omega_s(double value, const std::string& origin) {
  if (!(value >= 2 && value <= 3)) throw std::invalid_argument("omega_s must lie in [2, 3]");
  return single_step(BoundKind::omega_s, "given", {value}, origin);
}

bool replay(const ExponentBound& b) {
  if (b.provenance.empty()) return false;
  for (std::size_t i = 0; i < b.provenance.size(); ++i) {
    const auto& s = b.provenance[i];
    if (evaluate_rule(s.rule, s.inputs) != s.output) return false;
    if (s.rule == "convert" && (i == 0 || s.inputs.at(0) != b.provenance[i - 1].output)) return false;
  }
  return b.provenance.back().output == b.value;
}

double round_up(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::ceil(v * scale - 1e-9) / scale;
}

std::string format_bound(const ExponentBound& b) {
  char head[64];
  std::snprintf(head, sizeof head, "%s <= %.4f", b.kind == BoundKind::omega_s ? "omega_s" : "omega",
                round_up(b.value, 4));
  std::string out = head;
  out += " (provenance: ";
  for (std::size_t i = 0; i < b.provenance.size(); ++i) {
    const auto& s = b.provenance[i];
    if (i) out += "; ";
    if (s.rule == "given" && !s.note.empty()) {
      // Provenance carried over from an earlier computation.
      out += s.note;
      if (s.note.find("->") == std::string::npos) out += " -> " + num(s.output);
      continue;
    }
    out += s.rule;
    if (s.rule != "convert" && s.rule != "given") {
      out += "(";
      for (std::size_t k = 0; k < s.inputs.size(); ++k) out += (k ? "," : "") + num(s.inputs[k]);
      out += ")";
    }
    out += " -> " + num(s.output);
  }
  out += ")";
  for (const auto& a : b.assumptions) out += " [assumes " + a + "]";
  for (const auto& f : b.flags) out += " [" + f + "]";
  return out;
}

double parse_bound_value(const std::string& line) {
  std::size_t pos = line.rfind("->");
  std::size_t skip = 2;
  if (pos == std::string::npos) pos = line.find("<=");
  if (pos == std::string::npos) {
    pos = 0;
    skip = 0;
  }
  const std::string rest = line.substr(pos + skip);
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(rest, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("no numeric bound in '" + line + "'");
  }
  return v;
}

std::vector<PaperRow> reproduce_paper_numbers() {
  const struct {
    double s, pub;
    int dec;
  } rows[] = {{2.48, 2.72, 2}, {2.41, 2.62, 2}, {2.376, 2.564, 3}};
  std::vector<PaperRow> out;
  for (const auto& r : rows) {
    const ExponentBound b = omega_from_omega_s(given_omega_s(r.s, "published"));
    const double rep = round_up(b.value, r.dec);
    out.push_back({r.s, b.value, r.pub, r.dec, rep, rep <= r.pub + 1e-12});
  }
  return out;
}

}  // namespace ccmm
