#include "thetafix/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "thetafix/errors.hpp"

namespace thetafix {

namespace {

constexpr std::string_view kModeNames[] = {"verify-axioms", "certify-z", "certify-modified-z",
                                           "solve", "full"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != ',') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::optional<double> parse_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
};

// One parsed section: entries in file order plus the header line.
struct Section {
  std::size_t line = 0;
  std::vector<Entry> entries;
  std::set<std::string> used;

  const Entry* find(const std::string& key) {
    for (const auto& e : entries)
      if (e.key == key) {
        used.insert(key);
        return &e;
      }
    return nullptr;
  }
};

class ConfigReader {
 public:
  explicit ConfigReader(std::string_view text) { read(text); }

  Section* section(const std::string& name) {
    auto it = sections_.find(name);
    return it == sections_.end() ? nullptr : &it->second;
  }

  std::size_t last_line() const { return last_line_; }

  /// Every key must have been consumed by now.
  void reject_unused() const {
    for (const auto& [name, sec] : sections_)
      for (const auto& e : sec.entries)
        if (!sec.used.count(e.key))
          throw ParseError(e.line, "unknown key '" + e.key + "' in [" + name + "]");
  }

 private:
  void read(std::string_view text) {
    static const std::set<std::string> known{"experiment", "space", "map",
                                             "zeta",       "plan",  "solve"};
    Section* current = nullptr;
    std::string current_name;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view raw =
          text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;

      if (const auto hash = raw.find('#'); hash != std::string_view::npos)
        raw = raw.substr(0, hash);
      const auto line = trim(raw);
      if (line.empty() || line.front() == ';') continue;
      last_line_ = line_no;

      if (line.front() == '[') {
        if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
        const std::string name(trim(line.substr(1, line.size() - 2)));
        if (!known.count(name)) throw ParseError(line_no, "unknown section [" + name + "]");
        if (sections_.count(name)) throw ParseError(line_no, "duplicate section [" + name + "]");
        current = &sections_[name];
        current->line = line_no;
        current_name = name;
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ParseError(line_no, "expected 'key = value' or '[section]'");
      if (!current) throw ParseError(line_no, "key outside of any section");
      std::string key(trim(line.substr(0, eq)));
      if (key.empty()) throw ParseError(line_no, "empty key");
      for (const auto& e : current->entries)
        if (e.key == key)
          throw ParseError(line_no, "duplicate key '" + key + "' in [" + current_name +
                                        "] (first on line " + std::to_string(e.line) + ")");
      current->entries.push_back({std::move(key), std::string(trim(line.substr(eq + 1))), line_no});
    }
  }

  std::map<std::string, Section> sections_;
  std::size_t last_line_ = 0;
};

double real_value(const Entry& e) {
  if (auto v = parse_real(e.value)) return *v;
  throw ParseError(e.line, "'" + e.key + "' expects a real, got '" + e.value + "'");
}

std::vector<double> real_list(const Entry& e) {
  std::vector<double> out;
  for (const auto& w : split_words(e.value)) {
    auto v = parse_real(w);
    if (!v) throw ParseError(e.line, "'" + e.key + "' expects reals, got '" + w + "'");
    out.push_back(*v);
  }
  return out;
}

std::uint64_t uint_value(const Entry& e) {
  std::uint64_t v = 0;
  const auto& s = e.value;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
    throw ParseError(e.line, "'" + e.key + "' expects a nonnegative integer, got '" + s + "'");
  return v;
}

std::string word_value(const Entry& e) {
  const auto words = split_words(e.value);
  if (words.size() != 1)
    throw ParseError(e.line, "'" + e.key + "' expects a single word, got '" + e.value + "'");
  return words.front();
}

const Entry& required(Section& sec, const std::string& section_name, const std::string& key) {
  if (const auto* e = sec.find(key)) return *e;
  throw ParseError(sec.line, "[" + section_name + "] is missing '" + key + "'");
}

// Keys of the form d(x,y) in [space].
std::optional<std::pair<std::string, std::string>> distance_key(std::string_view key) {
  if (key.size() < 6 || key.substr(0, 2) != "d(" || key.back() != ')') return std::nullopt;
  const auto inner = key.substr(2, key.size() - 3);
  const auto comma = inner.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  const auto a = trim(inner.substr(0, comma));
  const auto b = trim(inner.substr(comma + 1));
  if (a.empty() || b.empty()) return std::nullopt;
  return std::pair{std::string(a), std::string(b)};
}

void read_space(Section& sec, Experiment& exp) {
  auto& s = exp.space;
  const auto& domain = required(sec, "space", "domain");
  const auto kind = word_value(domain);
  if (kind == "interval") {
    s.finite = false;
    s.lower = real_value(required(sec, "space", "lower"));
    s.upper = real_value(required(sec, "space", "upper"));
    if (const auto* m = sec.find("metric")) s.metric = word_value(*m);
  } else if (kind == "finite") {
    s.finite = true;
    const auto& labels = required(sec, "space", "labels");
    s.labels = split_words(labels.value);
    if (s.labels.empty()) throw ParseError(labels.line, "'labels' is empty");
    std::set<std::string> seen;
    for (const auto& l : s.labels)
      if (!seen.insert(l).second) throw ParseError(labels.line, "duplicate label '" + l + "'");

    const std::size_t n = s.labels.size();
    auto index = [&](const std::string& l, std::size_t line) {
      auto it = std::find(s.labels.begin(), s.labels.end(), l);
      if (it == s.labels.end()) throw ParseError(line, "unknown label '" + l + "'");
      return static_cast<std::size_t>(it - s.labels.begin());
    };
    s.table.assign(n * n, 0.0);
    std::vector<std::size_t> set_on(n * n, 0);
    for (const auto& e : sec.entries) {
      const auto pair = distance_key(e.key);
      if (!pair) continue;
      sec.used.insert(e.key);
      const auto i = index(pair->first, e.line);
      const auto j = index(pair->second, e.line);
      const double d = real_value(e);
      if (set_on[i * n + j])
        throw ParseError(e.line, "distance " + e.key + " already given on line " +
                                     std::to_string(set_on[i * n + j]));
      s.table[i * n + j] = s.table[j * n + i] = d;
      set_on[i * n + j] = set_on[j * n + i] = e.line;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!set_on[i * n + j])
          throw ParseError(sec.line, "[space] is missing d(" + s.labels[i] + "," + s.labels[j] +
                                         ")");
  } else {
    throw ParseError(domain.line, "domain must be 'interval' or 'finite', got '" + kind + "'");
  }
  s.action = word_value(required(sec, "space", "action"));
  if (const auto* p = sec.find("action_params")) s.action_params = real_list(*p);
}

void read_plan(Section& sec, Experiment& exp) {
  if (const auto* e = sec.find("step")) exp.plan.step = real_value(*e);
  if (const auto* e = sec.find("upper")) exp.plan.upper = real_value(*e);
  if (const auto* e = sec.find("random")) exp.plan.random_count = uint_value(*e);
  if (const auto* e = sec.find("seed")) exp.plan.seed = uint_value(*e);
  if (const auto* e = sec.find("pair_points")) exp.plan.pair_points = uint_value(*e);
  if (const auto* e = sec.find("zeta3_limits")) exp.sequences.limits = real_list(*e);
  if (const auto* e = sec.find("zeta3_coefficients")) exp.sequences.coefficients = real_list(*e);
  if (const auto* e = sec.find("zeta3_tail_start")) exp.sequences.tail_start = uint_value(*e);
  if (const auto* e = sec.find("zeta3_tail_length")) exp.sequences.tail_length = uint_value(*e);
}

void read_solve(Section& sec, Experiment& exp) {
  if (const auto* e = sec.find("tol")) exp.tol = real_value(*e);
  if (const auto* e = sec.find("max_iter")) exp.max_iter = uint_value(*e);
  if (const auto* e = sec.find("start_grid")) exp.start_grid = uint_value(*e);
  if (const auto* e = sec.find("starts")) {
    for (const auto& w : split_words(e->value)) {
      if (exp.space.finite) {
        auto it = std::find(exp.space.labels.begin(), exp.space.labels.end(), w);
        if (it == exp.space.labels.end()) throw ParseError(e->line, "unknown start label '" + w + "'");
        exp.starts.push_back(Point::label(static_cast<std::size_t>(it - exp.space.labels.begin())));
      } else {
        auto v = parse_real(w);
        if (!v) throw ParseError(e->line, "'starts' expects reals, got '" + w + "'");
        exp.starts.push_back(Point::coord(*v));
      }
    }
  }
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_real(v[i]);
  }
  return out;
}

std::string join_words(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v[i];
  }
  return out;
}

bool needs_map(Mode m) { return m != Mode::VerifyAxioms; }
bool needs_zeta(Mode m) {
  return m == Mode::CertifyZ || m == Mode::CertifyModifiedZ || m == Mode::Full;
}

}  // namespace

std::string_view to_string(Mode m) { return kModeNames[static_cast<int>(m)]; }

Mode mode_from_string(std::string_view name) {
  for (int i = 0; i < 5; ++i)
    if (kModeNames[i] == name) return static_cast<Mode>(i);
  throw UnknownKind("unknown mode '" + std::string(name) + "'");
}

std::optional<double> parse_real(std::string_view token) {
  token = trim(token);
  if (const auto slash = token.find('/'); slash != std::string_view::npos) {
    const auto num = parse_decimal(token.substr(0, slash));
    const auto den = parse_decimal(token.substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
  }
  return parse_decimal(token);
}

Resolved resolve(const Experiment& exp) {
  exp.plan.validate();
  exp.sequences.validate();
  if (!(exp.tol > 0.0)) throw ParameterError("solver tolerance must be > 0");
  if (exp.max_iter == 0) throw ParameterError("max_iter must be > 0");

  const auto& s = exp.space;
  const BAction action = make_b_action(s.action, s.action_params);
  std::optional<ThetaMetricSpace> space;
  if (s.finite) {
    space = ThetaMetricSpace::finite(PointDomain::finite(s.labels), s.table, action);
  } else {
    if (s.metric != "euclidean") throw UnknownKind("unknown interval metric '" + s.metric + "'");
    space = ThetaMetricSpace::euclidean(s.lower, s.upper, action);
  }
  Resolved r{std::move(*space), std::nullopt, std::nullopt, {}};
  const auto& domain = r.space.domain();
  if (exp.map) {
    if (exp.map->kind == "finite-table") {
      if (!domain.is_finite()) throw ParameterError("self-map 'finite-table' needs a finite domain");
      if (!exp.map->params.empty())
        throw ParameterError("finite-table takes its images from 'image', not 'params'");
      std::vector<double> idx;
      for (const auto& l : exp.map->image) {
        auto i = domain.find_label(l);
        if (!i) throw ParameterError("finite-table image '" + l + "' is not a label");
        idx.push_back(static_cast<double>(*i));
      }
      r.map = make_self_map("finite-table", idx, domain);
    } else {
      if (!exp.map->image.empty())
        throw ParameterError("'image' only applies to finite-table maps");
      r.map = make_self_map(exp.map->kind, exp.map->params, domain);
    }
  } else if (needs_map(exp.mode)) {
    throw InvalidArgument("mode " + std::string(to_string(exp.mode)) + " needs a [map] section");
  }
  if (exp.zeta) {
    r.zeta = make_simulation(exp.zeta->kind, exp.zeta->params, exp.zeta->aux);
  } else if (needs_zeta(exp.mode)) {
    throw InvalidArgument("mode " + std::string(to_string(exp.mode)) + " needs a [zeta] section");
  }

  if (!exp.starts.empty()) {
    if (exp.start_grid != 0)
      throw ParameterError("give either explicit starts or start_grid, not both");
    for (const auto& p : exp.starts) domain.require(p);
    r.starts = exp.starts;
  } else if (domain.is_finite()) {
    if (exp.start_grid != 0) throw ParameterError("start_grid applies to interval domains");
    for (std::size_t i = 0; i < domain.size(); ++i) r.starts.push_back(Point::label(i));
  } else {
    const std::size_t n = exp.start_grid == 0 ? 11 : exp.start_grid;
    for (double x : linspace(domain.lower(), domain.upper(), n)) r.starts.push_back(Point::coord(x));
  }
  return r;
}

Experiment parse_experiment(std::string_view text) {
  ConfigReader reader(text);
  Experiment exp;

  if (auto* sec = reader.section("experiment")) {
    if (const auto* e = sec->find("name")) exp.name = std::string(trim(e->value));
    const auto& m = required(*sec, "experiment", "mode");
    try {
      exp.mode = mode_from_string(word_value(m));
    } catch (const UnknownKind& err) {
      throw ParseError(m.line, err.what());
    }
  } else {
    throw ParseError(reader.last_line(), "missing [experiment] section");
  }

  auto* space = reader.section("space");
  if (!space) throw ParseError(reader.last_line(), "missing [space] section");
  read_space(*space, exp);

  if (auto* sec = reader.section("map")) {
    MapSpec map;
    map.kind = word_value(required(*sec, "map", "kind"));
    if (const auto* e = sec->find("params")) map.params = real_list(*e);
    if (const auto* e = sec->find("image")) map.image = split_words(e->value);
    exp.map = std::move(map);
  }
  if (auto* sec = reader.section("zeta")) {
    ZetaSpec zeta;
    zeta.kind = word_value(required(*sec, "zeta", "kind"));
    if (const auto* e = sec->find("params")) zeta.params = real_list(*e);
    if (const auto* e = sec->find("aux")) zeta.aux = word_value(*e);
    exp.zeta = std::move(zeta);
  }
  if (auto* sec = reader.section("plan")) read_plan(*sec, exp);
  if (auto* sec = reader.section("solve")) read_solve(*sec, exp);
  reader.reject_unused();

  resolve(exp);
  return exp;
}

std::string emit_experiment(const Experiment& exp) {
  std::ostringstream out;
  out << "[experiment]\n"
      << "name = " << exp.name << "\n"
      << "mode = " << to_string(exp.mode) << "\n\n";

  const auto& s = exp.space;
  out << "[space]\n";
  if (s.finite) {
    out << "domain = finite\n"
        << "labels = " << join_words(s.labels) << "\n";
    const std::size_t n = s.labels.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        out << "d(" << s.labels[i] << "," << s.labels[j] << ") = " << format_real(s.table[i * n + j])
            << "\n";
  } else {
    out << "domain = interval\n"
        << "lower = " << format_real(s.lower) << "\n"
        << "upper = " << format_real(s.upper) << "\n"
        << "metric = " << s.metric << "\n";
  }
  out << "action = " << s.action << "\n";
  if (!s.action_params.empty()) out << "action_params = " << join_reals(s.action_params) << "\n";
  out << "\n";

  if (exp.map) {
    out << "[map]\n"
        << "kind = " << exp.map->kind << "\n";
    if (!exp.map->params.empty()) out << "params = " << join_reals(exp.map->params) << "\n";
    if (!exp.map->image.empty()) out << "image = " << join_words(exp.map->image) << "\n";
    out << "\n";
  }
  if (exp.zeta) {
    out << "[zeta]\n"
        << "kind = " << exp.zeta->kind << "\n";
    if (!exp.zeta->params.empty()) out << "params = " << join_reals(exp.zeta->params) << "\n";
    if (!exp.zeta->aux.empty()) out << "aux = " << exp.zeta->aux << "\n";
    out << "\n";
  }

  out << "[plan]\n"
      << "step = " << format_real(exp.plan.step) << "\n"
      << "upper = " << format_real(exp.plan.upper) << "\n"
      << "random = " << exp.plan.random_count << "\n"
      << "seed = " << exp.plan.seed << "\n"
      << "pair_points = " << exp.plan.pair_points << "\n"
      << "zeta3_limits = " << join_reals(exp.sequences.limits) << "\n"
      << "zeta3_coefficients = " << join_reals(exp.sequences.coefficients) << "\n"
      << "zeta3_tail_start = " << exp.sequences.tail_start << "\n"
      << "zeta3_tail_length = " << exp.sequences.tail_length << "\n\n";

  out << "[solve]\n"
      << "tol = " << format_real(exp.tol) << "\n"
      << "max_iter = " << exp.max_iter << "\n";
  if (exp.start_grid != 0) out << "start_grid = " << exp.start_grid << "\n";
  if (!exp.starts.empty()) {
    out << "starts =";
    for (const auto& p : exp.starts)
      out << ' ' << (p.is_label() ? s.labels.at(p.index()) : format_real(p.coordinate()));
    out << "\n";
  }
  return out.str();
}

}  // namespace thetafix
