#include "stirap/experiment.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace stirap {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  if (trim(value).empty()) return items;
  std::size_t pos = 0;
  while (true) {
    const auto comma = value.find(',', pos);
    items.push_back(trim(value.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return items;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string("off");
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) out += ", ";
    out += fmt(items[i]);
  }
  return out;
}

struct Reader {
  std::size_t line = 0;
  std::string key;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, key + ": " + msg); }

  double number(std::string_view v) const {
    const auto x = parse_number(v);
    if (!x) fail("cannot parse number '" + std::string(v) + "'");
    return *x;
  }
  double at_least(std::string_view v, double lo) const {
    const double x = number(v);
    if (!(x >= lo)) fail("value " + std::string(v) + " must be >= " + format_double(lo));
    return x;
  }
  double positive(std::string_view v) const {
    const double x = number(v);
    if (!(x > 0.0)) fail("value " + std::string(v) + " must be > 0");
    return x;
  }
  std::size_t count(std::string_view v, std::size_t lo) const {
    std::size_t n = 0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, n);
    if (res.ec != std::errc() || res.ptr != end) {
      // Allow 1e6-style integers.
      const double x = number(v);
      if (!(x >= 0.0) || x != static_cast<double>(static_cast<std::size_t>(x))) {
        fail("expected a non-negative integer, got '" + std::string(v) + "'");
      }
      n = static_cast<std::size_t>(x);
    }
    if (n < lo) fail("value must be >= " + std::to_string(lo));
    return n;
  }
  std::uint64_t u64(std::string_view v) const {
    std::uint64_t n = 0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, n);
    if (res.ec != std::errc() || res.ptr != end) fail("expected an unsigned 64-bit integer");
    return n;
  }
  bool boolean(std::string_view v) const {
    if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "off" || v == "no" || v == "0") return false;
    fail("expected a boolean, got '" + std::string(v) + "'");
  }
  std::optional<double> optional_positive(std::string_view v) const {
    if (v == "off" || v == "none") return std::nullopt;
    return positive(v);
  }
  std::vector<double> list_at_least(std::string_view v, double lo, bool allow_empty = false) const {
    std::vector<double> out;
    for (auto item : split_list(v)) out.push_back(at_least(item, lo));
    if (out.empty() && !allow_empty) fail("list must not be empty");
    return out;
  }
  std::vector<double> list_positive(std::string_view v) const {
    std::vector<double> out;
    for (auto item : split_list(v)) out.push_back(positive(item));
    if (out.empty()) fail("list must not be empty");
    return out;
  }
};

using Handler = std::function<void(ExperimentSpec&, const Reader&, std::string_view)>;

const std::map<std::string, Handler, std::less<>>& handlers() {
  static const std::map<std::string, Handler, std::less<>> table = {
      {"family",
       [](ExperimentSpec& s, const Reader& r, std::string_view v) {
         const auto f = parse_family(v);
         if (!f) r.fail("unknown pulse family '" + std::string(v) + "' (gaussian|sincos)");
         s.family = *f;
       }},
      {"omega0", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.omega0 = r.at_least(v, 0.0); }},
      {"tau_over_T", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.tau_over_T = r.positive(v); }},
      {"cd", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.cd = r.boolean(v); }},
      {"gamma", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.gamma = r.at_least(v, 0.0); }},
      {"sigma", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.sigma = r.at_least(v, 0.0); }},
      {"tau_c", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.tau_c = r.optional_positive(v); }},
      {"n_runs", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.n_runs = r.count(v, 1); }},
      {"seed", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.seed = r.u64(v); }},
      {"dt",
       [](ExperimentSpec& s, const Reader& r, std::string_view v) {
         s.dt = v == "auto" ? std::nullopt : std::optional<double>(r.positive(v));
       }},
      {"step_rule",
       [](ExperimentSpec& s, const Reader& r, std::string_view v) {
         if (v == "warn") {
           s.step_rule = StepRulePolicy::Warn;
         } else if (v == "error") {
           s.step_rule = StepRulePolicy::Error;
         } else if (v == "ignore") {
           s.step_rule = StepRulePolicy::Ignore;
         } else {
           r.fail("expected 'warn', 'error' or 'ignore'");
         }
       }},
      {"T", [](ExperimentSpec& s, const Reader&, std::string_view v) { s.time_unit = std::string(v); }},
      {"out_dir", [](ExperimentSpec& s, const Reader&, std::string_view v) { s.out_dir = std::string(v); }},
      {"plots", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.plots = r.boolean(v); }},
      {"omega0_values",
       [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.omega0_values = r.list_at_least(v, 0.0); }},
      {"gammas", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.gammas = r.list_at_least(v, 0.0); }},
      {"tau_cs",
       [](ExperimentSpec& s, const Reader& r, std::string_view v) {
         s.tau_cs.clear();
         for (auto item : split_list(v)) s.tau_cs.push_back(r.optional_positive(item));
       }},
      {"delays", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.delays = r.list_positive(v); }},
      {"cd_modes",
       [](ExperimentSpec& s, const Reader& r, std::string_view v) {
         s.cd_modes.clear();
         for (auto item : split_list(v)) s.cd_modes.push_back(r.boolean(item));
         if (s.cd_modes.empty()) r.fail("list must not be empty");
       }},
      {"n_samples", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.n_samples = r.count(v, 2); }},
      {"iterations", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.iterations = r.count(v, 1); }},
      {"hist_bins", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.hist_bins = r.count(v, 1); }},
      {"max_lag_over_tau_c",
       [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.max_lag_over_tau_c = r.positive(v); }},
      {"spectrum_tau_cs",
       [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.spectrum_tau_cs = r.list_positive(v); }},
      {"omega_max", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.omega_max = r.positive(v); }},
      {"omega_points", [](ExperimentSpec& s, const Reader& r, std::string_view v) { s.omega_points = r.count(v, 2); }},
  };
  return table;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  const auto read = [](std::string_view s) -> std::optional<double> {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double x = 0.0;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, x);
    if (s.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(x)) return std::nullopt;
    return x;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return read(text);
  const auto num = read(text.substr(0, slash));
  const auto den = read(text.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

RunConfig ExperimentSpec::run_config() const {
  RunConfig cfg;
  cfg.protocol.family = family;
  cfg.protocol.omega0 = omega0;
  cfg.protocol.tau = tau_over_T;
  cfg.protocol.cd_enabled = cd;
  cfg.gamma = gamma;
  cfg.noise.sigma = sigma;
  cfg.noise_enabled = tau_c.has_value();
  if (tau_c) cfg.noise.tau_c = *tau_c;
  return cfg;
}

ExperimentSpec parse_spec(std::string_view text, std::vector<std::string>* warnings) {
  ExperimentSpec spec;
  std::map<std::string, std::size_t, std::less<>> seen;
  Reader reader;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    const auto& table = handlers();
    const auto it = table.find(key);
    if (it == table.end()) throw ParseError(line_no, "unknown key '" + key + "'");
    if (const auto prev = seen.find(key); prev != seen.end()) {
      throw ParseError(line_no, "key '" + key + "' already set on line " + std::to_string(prev->second));
    }
    seen.emplace(key, line_no);
    reader.line = line_no;
    reader.key = key;
    it->second(spec, reader, value);
  }

  if (!seen.contains("family")) throw ParseError(0, "missing required key 'family'");
  if (spec.family == PulseFamily::SinCos && warnings != nullptr) {
    for (const char* key : {"tau_over_T", "delays"}) {
      if (const auto it = seen.find(key); it != seen.end()) {
        warnings->push_back("line " + std::to_string(it->second) + ": key '" + key +
                            "' is ignored for the sin-cos family");
      }
    }
  }
  return spec;
}

std::string render_spec(const ExperimentSpec& s) {
  const ExperimentSpec defaults;
  std::ostringstream out;
  const auto num = [](double x) { return format_double(x); };
  const auto flag = [](bool b) { return std::string(b ? "true" : "false"); };

  out << "family = " << to_string(s.family) << '\n';
  out << "omega0 = " << num(s.omega0) << '\n';
  if (s.family == PulseFamily::Gaussian || s.tau_over_T != defaults.tau_over_T) {
    out << "tau_over_T = " << num(s.tau_over_T) << '\n';
  }
  out << "cd = " << flag(s.cd) << '\n';
  out << "gamma = " << num(s.gamma) << '\n';
  out << "sigma = " << num(s.sigma) << '\n';
  out << "tau_c = " << format_optional(s.tau_c) << '\n';
  out << "n_runs = " << s.n_runs << '\n';
  out << "seed = " << s.seed << '\n';
  out << "dt = " << (s.dt ? num(*s.dt) : std::string("auto")) << '\n';
  out << "step_rule = "
      << (s.step_rule == StepRulePolicy::Warn ? "warn" : s.step_rule == StepRulePolicy::Error ? "error" : "ignore")
      << '\n';
  out << "T = " << s.time_unit << '\n';
  if (!s.out_dir.empty()) out << "out_dir = " << s.out_dir << '\n';
  out << "plots = " << flag(s.plots) << '\n';
  out << "omega0_values = " << join(s.omega0_values, num) << '\n';
  out << "gammas = " << join(s.gammas, num) << '\n';
  out << "tau_cs = " << join(s.tau_cs, format_optional) << '\n';
  if (s.family == PulseFamily::Gaussian || s.delays != defaults.delays) {
    out << "delays = " << join(s.delays, num) << '\n';
  }
  out << "cd_modes = " << join(s.cd_modes, flag) << '\n';
  out << "n_samples = " << s.n_samples << '\n';
  out << "iterations = " << s.iterations << '\n';
  out << "hist_bins = " << s.hist_bins << '\n';
  out << "max_lag_over_tau_c = " << num(s.max_lag_over_tau_c) << '\n';
  out << "spectrum_tau_cs = " << join(s.spectrum_tau_cs, num) << '\n';
  out << "omega_max = " << num(s.omega_max) << '\n';
  out << "omega_points = " << s.omega_points << '\n';
  return out.str();
}

}  // namespace stirap
