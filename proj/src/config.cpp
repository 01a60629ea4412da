#include "fluct/config.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <set>

#include "fluct/errors.hpp"

namespace fluct {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

class Reader {
 public:
  Reader(std::string source, std::map<std::string, Section> sections)
      : source_(std::move(source)), sections_(std::move(sections)) {}

  [[noreturn]] void fail(std::size_t line, const std::string& what) const {
    throw ConfigError(source_, line, what);
  }

  bool has_section(const std::string& name) const { return sections_.count(name) != 0; }

  Entry* find(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto e = s->second.find(key);
    if (e == s->second.end()) return nullptr;
    e->second.used = true;
    return &e->second;
  }

  Entry& require(const std::string& section, const std::string& key) {
    Entry* e = find(section, key);
    if (!e) fail(0, "[" + section + "] is missing required key '" + key + "'");
    return *e;
  }

  double to_double(const Entry& e, const std::string& key) const {
    const std::string v = lower(e.value);
    if (v == "inf" || v == "+inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    double out = 0.0;
    const char* end = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), end, out);
    if (ec != std::errc{} || ptr != end) fail(e.line, "'" + key + "' expects a number, got '" + e.value + "'");
    return out;
  }

  long long to_integer(const Entry& e, const std::string& key) const {
    long long out = 0;
    const char* end = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), end, out);
    if (ec != std::errc{} || ptr != end) fail(e.line, "'" + key + "' expects an integer, got '" + e.value + "'");
    return out;
  }

  bool to_bool(const Entry& e, const std::string& key) const {
    const std::string v = lower(e.value);
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    fail(e.line, "'" + key + "' expects true or false, got '" + e.value + "'");
  }

  std::vector<std::string> to_list(const Entry& e) const {
    std::vector<std::string> items;
    std::size_t start = 0;
    for (;;) {
      const auto comma = e.value.find(',', start);
      items.push_back(trim(std::string_view(e.value).substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    for (const auto& item : items) {
      if (item.empty()) fail(e.line, "empty item in list '" + e.value + "'");
    }
    return items;
  }

  template <class T, class Convert>
  std::vector<T> list_of(const Entry& e, const std::string& key, Convert convert) const {
    std::vector<T> out;
    for (const auto& item : to_list(e)) out.push_back(convert(Entry{item, e.line, true}, key));
    return out;
  }

  double number(const std::string& section, const std::string& key) {
    return to_double(require(section, key), key);
  }

  void reject_unused() const {
    for (const auto& [name, section] : sections_) {
      for (const auto& [key, entry] : section) {
        if (!entry.used) fail(entry.line, "unknown key '" + key + "' in [" + name + "]");
      }
    }
  }

 private:
  std::string source_;
  std::map<std::string, Section> sections_;
};

const std::set<std::string> kSections = {"model", "market", "contract", "numerics", "experiment"};

std::map<std::string, Section> tokenize(std::istream& in, const std::string& source) {
  std::map<std::string, Section> sections;
  std::string current;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    const std::string line = trim(std::string_view(raw).substr(0, comment));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, line_no, "unterminated section header");
      current = lower(trim(std::string_view(line).substr(1, line.size() - 2)));
      if (!kSections.count(current)) {
        throw ConfigError(source, line_no, "unknown section [" + current + "]");
      }
      if (sections.count(current)) {
        throw ConfigError(source, line_no, "section [" + current + "] appears twice");
      }
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line_no, "expected 'key = value'");
    if (current.empty()) throw ConfigError(source, line_no, "key outside of any section");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(source, line_no, "missing key before '='");
    if (value.empty()) throw ConfigError(source, line_no, "missing value for '" + key + "'");
    auto [it, inserted] = sections[current].emplace(key, Entry{value, line_no, false});
    if (!inserted) {
      throw ConfigError(source, line_no,
                        "duplicate key '" + key + "' (first set on line " +
                            std::to_string(it->second.line) + ")");
    }
  }
  return sections;
}

ProcessParams read_process(Reader& r, const std::string& name) {
  const std::string s = "model";
  if (name == "normal") return NormalParams{r.number(s, "sigma")};
  if (name == "kou") {
    return KouParams{r.number(s, "sigma"), r.number(s, "lambda"), r.number(s, "p"),
                     r.number(s, "eta1"), r.number(s, "eta2")};
  }
  if (name == "merton") {
    return MertonParams{r.number(s, "sigma"), r.number(s, "lambda"), r.number(s, "alpha_j"),
                        r.number(s, "delta_j")};
  }
  if (name == "nig") return NigParams{r.number(s, "alpha"), r.number(s, "beta"), r.number(s, "delta")};
  if (name == "vg") return VgParams{r.number(s, "theta"), r.number(s, "sigma"), r.number(s, "nu")};
  r.fail(r.require(s, "name").line,
         "unknown model '" + name + "' (expected normal, kou, merton, nig or vg)");
}

std::optional<double> optional_barrier(Reader& r, const std::string& key) {
  Entry* e = r.find("contract", key);
  if (!e) return std::nullopt;
  const std::string v = lower(e->value);
  if (v == "none") return std::nullopt;
  const double value = r.to_double(*e, key);
  if (std::isinf(value)) return std::nullopt;
  return value;
}

PricingMode read_mode(Reader& r, const Entry& e) {
  const std::string v = lower(e.value);
  if (v == "continuous-single") return PricingMode::continuous_single;
  if (v == "continuous-double") return PricingMode::continuous_double;
  if (v == "discrete-single") return PricingMode::discrete_single;
  if (v == "discrete-double") return PricingMode::discrete_double;
  r.fail(e.line, "unknown mode '" + e.value +
                     "' (expected continuous-single, continuous-double, discrete-single or "
                     "discrete-double)");
}

void check_grid_size(Reader& r, const Entry& e, long long m) {
  if (m < 8 || !std::has_single_bit(static_cast<unsigned long long>(m))) {
    r.fail(e.line, "grid size " + e.value + " is not a power of two >= 8");
  }
}

}  // namespace

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         what),
      line_(line) {}

std::string_view mode_name(PricingMode mode) {
  switch (mode) {
    case PricingMode::continuous_single: return "continuous-single";
    case PricingMode::continuous_double: return "continuous-double";
    case PricingMode::discrete_single: return "discrete-single";
    case PricingMode::discrete_double: return "discrete-double";
  }
  return "unknown";
}

bool is_discrete(PricingMode mode) {
  return mode == PricingMode::discrete_single || mode == PricingMode::discrete_double;
}

void RunConfig::require_pricing_sections() const {
  if (!process) throw ConfigError(source, 0, "missing [model] section");
  if (!market) throw ConfigError(source, 0, "missing [market] section");
  if (!contract) throw ConfigError(source, 0, "missing [contract] section");
}

LevyModel RunConfig::model() const {
  require_pricing_sections();
  return LevyModel(*process, *market);
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  Reader r(source, tokenize(in, source));
  RunConfig cfg;
  cfg.source = source;

  if (r.has_section("model")) {
    cfg.model_name = lower(r.require("model", "name").value);
    cfg.process = read_process(r, cfg.model_name);
  }
  if (r.has_section("market")) {
    cfg.market = MarketParams{r.number("market", "r"), r.number("market", "q")};
  }
  if (r.has_section("contract")) {
    OptionContract c;
    c.spot = r.number("contract", "S0");
    c.strike = r.number("contract", "K");
    c.maturity = r.number("contract", "T");
    c.lower = optional_barrier(r, "L");
    c.upper = optional_barrier(r, "U");
    if (Entry* e = r.find("contract", "type")) {
      const std::string v = lower(e->value);
      if (v == "call") {
        c.type = OptionType::call;
      } else if (v == "put") {
        c.type = OptionType::put;
      } else {
        r.fail(e->line, "type must be call or put, got '" + e->value + "'");
      }
    }
    if (Entry* e = r.find("contract", "alpha")) c.damping = r.to_double(*e, "alpha");
    cfg.contract = c;
  }

  if (r.has_section("numerics")) {
    const std::string s = "numerics";
    if (Entry* e = r.find(s, "M")) {
      const auto m = r.to_integer(*e, "M");
      check_grid_size(r, *e, m);
      cfg.grid_size = static_cast<std::size_t>(m);
    }
    if (Entry* e = r.find(s, "x_max")) cfg.x_max = r.to_double(*e, "x_max");
    auto& eng = cfg.engine;
    if (Entry* e = r.find(s, "filter_order")) eng.filter.order = static_cast<int>(r.to_integer(*e, "filter_order"));
    if (Entry* e = r.find(s, "filter_decay")) eng.filter.decay = r.to_double(*e, "filter_decay");
    if (Entry* e = r.find(s, "euler_A")) eng.euler.A = r.to_double(*e, "euler_A");
    if (Entry* e = r.find(s, "euler_n")) eng.euler.n = static_cast<int>(r.to_integer(*e, "euler_n"));
    if (Entry* e = r.find(s, "euler_m")) eng.euler.m = static_cast<int>(r.to_integer(*e, "euler_m"));
    if (Entry* e = r.find(s, "fp_tol")) eng.fixed_point.tolerance = r.to_double(*e, "fp_tol");
    if (Entry* e = r.find(s, "fp_max_iter")) eng.fixed_point.max_iterations = static_cast<int>(r.to_integer(*e, "fp_max_iter"));
    if (Entry* e = r.find(s, "z_gamma")) eng.z.gamma = r.to_double(*e, "z_gamma");
    if (Entry* e = r.find(s, "z_size")) eng.z.quadrature_size = static_cast<int>(r.to_integer(*e, "z_size"));
    if (Entry* e = r.find(s, "snap_barriers")) eng.snap_barriers = r.to_bool(*e, "snap_barriers");
    if (Entry* e = r.find(s, "threads")) {
      const auto t = r.to_integer(*e, "threads");
      if (t < 0) r.fail(e->line, "threads must be >= 0");
      eng.threads = static_cast<unsigned>(t);
    }
  }

  if (r.has_section("experiment")) {
    const std::string s = "experiment";
    auto& ex = cfg.experiment;
    if (Entry* e = r.find(s, "mode")) ex.mode = read_mode(r, *e);
    if (Entry* e = r.find(s, "N")) {
      const auto n = r.to_integer(*e, "N");
      if (n < 1) r.fail(e->line, "N must be at least 1");
      ex.dates = static_cast<int>(n);
    }
    if (Entry* e = r.find(s, "M_sweep")) {
      for (auto m : r.list_of<long long>(*e, "M_sweep", [&](const Entry& x, const std::string& k) { return r.to_integer(x, k); })) {
        check_grid_size(r, *e, m);
        ex.m_sweep.push_back(static_cast<std::size_t>(m));
      }
      if (!std::is_sorted(ex.m_sweep.begin(), ex.m_sweep.end()) ||
          std::adjacent_find(ex.m_sweep.begin(), ex.m_sweep.end()) != ex.m_sweep.end()) {
        r.fail(e->line, "M_sweep must be strictly ascending");
      }
    }
    if (Entry* e = r.find(s, "M_ref")) {
      const auto m = r.to_integer(*e, "M_ref");
      check_grid_size(r, *e, m);
      ex.m_reference = static_cast<std::size_t>(m);
    }
    if (Entry* e = r.find(s, "N_sweep")) {
      for (auto n : r.list_of<long long>(*e, "N_sweep", [&](const Entry& x, const std::string& k) { return r.to_integer(x, k); })) {
        if (n < 1) r.fail(e->line, "N_sweep entries must be at least 1");
        ex.n_sweep.push_back(static_cast<int>(n));
      }
      if (!std::is_sorted(ex.n_sweep.begin(), ex.n_sweep.end()) ||
          std::adjacent_find(ex.n_sweep.begin(), ex.n_sweep.end()) != ex.n_sweep.end()) {
        r.fail(e->line, "N_sweep must be strictly ascending");
      }
    }
    if (Entry* e = r.find(s, "tau")) {
      ex.tau = r.to_double(*e, "tau");
      if (!(ex.tau > 0.0)) r.fail(e->line, "tau must be positive");
    }
    if (Entry* e = r.find(s, "t_values")) {
      ex.t_values = r.list_of<double>(*e, "t_values", [&](const Entry& x, const std::string& k) { return r.to_double(x, k); });
      for (double t : ex.t_values) {
        if (!(t > 0.0)) r.fail(e->line, "t_values must be positive");
      }
    }
    if (Entry* e = r.find(s, "output")) ex.output = e->value;
  }

  r.reject_unused();

  // Cross-key invariants, reported without a line number.
  auto invariant = [&](auto&& check, const char* what) {
    try {
      check();
    } catch (const std::exception& e) {
      throw ConfigError(source, 0, std::string(what) + ": " + e.what());
    }
  };
  if (cfg.process && cfg.market) invariant([&] { (void)LevyModel(*cfg.process, *cfg.market); }, "[model]");
  if (cfg.contract) invariant([&] { cfg.contract->validate(); }, "[contract]");
  invariant([&] { (void)FourierGrid(cfg.grid_size, cfg.x_max); }, "[numerics]");
  invariant([&] {
    cfg.engine.filter.validate();
    cfg.engine.euler.validate();
    cfg.engine.fixed_point.validate();
    if (!(cfg.engine.z.gamma > 0.0)) throw InvalidParameter("z_gamma must be positive");
    if (cfg.engine.z.quadrature_size < 0) throw InvalidParameter("z_size must be >= 0");
  }, "[numerics]");
  if (cfg.contract) {
    const auto mode = cfg.experiment.mode;
    const bool wants_upper =
        mode == PricingMode::continuous_double || mode == PricingMode::discrete_double;
    if (!cfg.contract->lower) {
      throw ConfigError(source, 0, "[contract]: barrier modes need a lower barrier L");
    }
    if (wants_upper != cfg.contract->upper.has_value()) {
      throw ConfigError(source, 0,
                        std::string("[experiment]: mode ") + std::string(mode_name(mode)) +
                            (wants_upper ? " needs an upper barrier U"
                                         : " does not take an upper barrier U"));
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open file");
  return parse_config(in, path.string());
}

}  // namespace fluct
