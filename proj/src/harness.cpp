#include "regretlab/harness.hpp"

#include "json.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace regretlab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

// schema guard: reject keys the reader would silently ignore
void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) { known = true; break; }
    if (!known) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_doubles(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_double(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <typename T, std::size_t N>
T from_name(const std::string& s, const std::pair<const char*, T> (&table)[N],
            const std::string& path, const char* what) {
  for (const auto& [name, value] : table)
    if (s == name) return value;
  fail(path, std::string("unknown ") + what + " '" + s + "'");
}

template <typename T, std::size_t N>
const char* to_name(T v, const std::pair<const char*, T> (&table)[N]) {
  for (const auto& [name, value] : table)
    if (v == value) return name;
  return "?";
}

constexpr std::pair<const char*, RegKind> kRegNames[] = {
    {"half_squared_l2", RegKind::HalfSquaredL2},
    {"negative_entropy", RegKind::NegativeEntropy}};
constexpr std::pair<const char*, GeneratorKind> kGeneratorNames[] = {
    {"quadratic", GeneratorKind::Quadratic},
    {"linear", GeneratorKind::Linear},
    {"hinge", GeneratorKind::Hinge}};
constexpr std::pair<const char*, CompositeKind> kCompositeNames[] = {
    {"none", CompositeKind::None},
    {"l1", CompositeKind::L1},
    {"half_squared_l2", CompositeKind::HalfSquaredL2}};
constexpr std::pair<const char*, SetKind> kSetNames[] = {
    {"ball", SetKind::Ball}, {"box", SetKind::Box}, {"simplex", SetKind::Simplex}};
constexpr std::pair<const char*, ScheduleKind> kScheduleNames[] = {
    {"zero", ScheduleKind::Zero},
    {"constant", ScheduleKind::Constant},
    {"inverse_t", ScheduleKind::InverseT},
    {"inverse_sqrt_t", ScheduleKind::InverseSqrtT},
    {"sqrt_t", ScheduleKind::SqrtT}};
constexpr std::pair<const char*, DeltaSchedule::Kind> kDeltaNames[] = {
    {"exact", DeltaSchedule::Kind::Exact},
    {"constant", DeltaSchedule::Kind::Constant},
    {"inverse_sqrt_t", DeltaSchedule::Kind::InverseSqrtT},
    {"inverse_t", DeltaSchedule::Kind::InverseT},
    {"inverse_t2", DeltaSchedule::Kind::InverseT2}};

Schedule parse_schedule(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object {kind, c}");
  check_keys(j, path, {"kind", "c"});
  const json* k = find(j, "kind");
  if (!k) fail(path + ".kind", "required");
  Schedule s;
  s.kind = from_name(as_string(*k, path + ".kind"), kScheduleNames, path + ".kind",
                     "schedule kind");
  if (const json* c = find(j, "c")) s.c = as_double(*c, path + ".c");
  if (s.kind == ScheduleKind::Zero) s.c = 0.0;
  return s;
}

DeltaSchedule parse_delta(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object {kind, c}");
  check_keys(j, path, {"kind", "c"});
  const json* k = find(j, "kind");
  if (!k) fail(path + ".kind", "required");
  DeltaSchedule d;
  d.kind = from_name(as_string(*k, path + ".kind"), kDeltaNames, path + ".kind",
                     "delta kind");
  if (d.kind == DeltaSchedule::Kind::Exact) return DeltaSchedule::exact();
  d.c = 1.0;
  if (const json* c = find(j, "c")) d.c = as_double(*c, path + ".c");
  if (!(d.c > 0.0)) fail(path + ".c", "must be positive");
  return d;
}

SetSpec parse_set(const json& j) {
  if (!j.is_object()) fail("set", "expected an object");
  check_keys(j, "set", {"kind", "d", "radius", "center", "lo", "hi"});
  SetSpec s;
  const json* k = find(j, "kind");
  if (!k) fail("set.kind", "required");
  s.kind = from_name(as_string(*k, "set.kind"), kSetNames, "set.kind", "set kind");
  if (const json* d = find(j, "d")) s.d = as_int(*d, "set.d");
  if (const json* r = find(j, "radius")) s.radius = as_double(*r, "set.radius");
  if (const json* c = find(j, "center")) s.center = as_doubles(*c, "set.center");
  if (const json* lo = find(j, "lo")) s.lo = as_doubles(*lo, "set.lo");
  if (const json* hi = find(j, "hi")) s.hi = as_doubles(*hi, "set.hi");
  switch (s.kind) {
    case SetKind::Ball:
      if (!s.center.empty() && static_cast<int>(s.center.size()) != s.d)
        fail("set.center", "length must match set.d");
      break;
    case SetKind::Box:
      if (s.lo.empty()) fail("set.lo", "required for a box");
      if (s.lo.size() != s.hi.size()) fail("set.hi", "length must match set.lo");
      s.d = static_cast<int>(s.lo.size());
      break;
    case SetKind::Simplex:
      break;
  }
  if (s.d < 1) fail("set.d", "must be at least 1");
  return s;
}

ExperimentConfig config_from(const json& j) {
  if (!j.is_object()) fail("config", "top level must be an object");
  check_keys(j, "", {"name", "learner", "regularizer", "eta", "beta", "delta",
                     "batch", "adversary", "set", "seed", "seeds", "horizons",
                     "bounds", "slope", "strict", "validate", "out", "format"});
  ExperimentConfig cfg;
  if (const json* v = find(j, "name")) cfg.name = as_string(*v, "name");
  const json* learner = find(j, "learner");
  if (!learner) fail("learner", "required");
  try {
    cfg.learner.kind = learner_from_name(as_string(*learner, "learner"));
  } catch (const ConfigError& e) {
    fail("learner", e.what());
  }
  if (const json* v = find(j, "regularizer"))
    cfg.learner.regularizer = from_name(as_string(*v, "regularizer"), kRegNames,
                                        "regularizer", "regularizer");
  if (const json* v = find(j, "eta")) cfg.learner.eta = parse_schedule(*v, "eta");
  if (const json* v = find(j, "beta")) cfg.learner.beta = parse_schedule(*v, "beta");
  if (const json* v = find(j, "delta")) cfg.learner.delta = parse_delta(*v, "delta");
  if (const json* v = find(j, "batch")) {
    if (!v->is_object()) fail("batch", "expected an object {inner, size}");
    check_keys(*v, "batch", {"inner", "size"});
    if (const json* inner = find(*v, "inner")) {
      try {
        cfg.learner.inner = learner_from_name(as_string(*inner, "batch.inner"));
      } catch (const ConfigError& e) {
        fail("batch.inner", e.what());
      }
    }
    if (const json* size = find(*v, "size")) {
      cfg.learner.batch_size = as_int(*size, "batch.size");
      if (cfg.learner.batch_size < 0) fail("batch.size", "must be nonnegative");
    }
  }
  if (const json* v = find(j, "adversary")) {
    if (!v->is_object()) fail("adversary", "expected an object");
    check_keys(*v, "adversary",
               {"kind", "scale", "curvature", "bias", "margin", "composite"});
    if (const json* k = find(*v, "kind"))
      cfg.adversary.kind = from_name(as_string(*k, "adversary.kind"), kGeneratorNames,
                                     "adversary.kind", "generator");
    if (const json* s = find(*v, "scale")) {
      cfg.adversary.scale = as_double(*s, "adversary.scale");
      if (!(cfg.adversary.scale > 0.0)) fail("adversary.scale", "must be positive");
    }
    if (const json* c = find(*v, "curvature")) {
      cfg.adversary.curvature = as_double(*c, "adversary.curvature");
      if (!(cfg.adversary.curvature > 0.0))
        fail("adversary.curvature", "must be positive");
    }
    if (const json* b = find(*v, "bias")) {
      cfg.adversary.bias = as_double(*b, "adversary.bias");
      if (!(cfg.adversary.bias >= 0.0 && cfg.adversary.bias < 1.0))
        fail("adversary.bias", "must lie in [0, 1)");
    }
    if (const json* m = find(*v, "margin")) {
      cfg.adversary.margin = as_double(*m, "adversary.margin");
      if (!(cfg.adversary.margin >= 0.0)) fail("adversary.margin", "must be nonnegative");
    }
    if (const json* comp = find(*v, "composite")) {
      if (!comp->is_object()) fail("adversary.composite", "expected an object");
      check_keys(*comp, "adversary.composite", {"kind", "weight"});
      if (const json* k = find(*comp, "kind"))
        cfg.composite = from_name(as_string(*k, "adversary.composite.kind"),
                                  kCompositeNames, "adversary.composite.kind",
                                  "composite kind");
      if (const json* w = find(*comp, "weight")) {
        cfg.composite_weight = as_double(*w, "adversary.composite.weight");
        if (cfg.composite != CompositeKind::None && !(cfg.composite_weight > 0.0))
          fail("adversary.composite.weight", "must be positive");
      }
      if (cfg.composite != CompositeKind::None && cfg.composite_weight == 0.0)
        fail("adversary.composite.weight", "required");
    }
  }
  const json* set = find(j, "set");
  if (!set) fail("set", "required");
  cfg.set = parse_set(*set);

  if (const json* v = find(j, "seed")) {
    if (!v->is_number_integer()) fail("seed", "expected an integer");
    cfg.seeds = {v->get<std::uint64_t>()};
  }
  if (const json* v = find(j, "seeds")) {
    if (!v->is_array() || v->empty()) fail("seeds", "expected a nonempty array");
    cfg.seeds.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      if (!e.is_number_integer()) fail("seeds[" + std::to_string(i) + "]",
                                       "expected an integer");
      cfg.seeds.push_back(e.get<std::uint64_t>());
    }
  }
  if (const json* v = find(j, "horizons")) {
    if (!v->is_array() || v->empty()) fail("horizons", "expected a nonempty array");
    cfg.horizons.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      int T = as_int((*v)[i], "horizons[" + std::to_string(i) + "]");
      if (T < 0) fail("horizons[" + std::to_string(i) + "]", "must be nonnegative");
      cfg.horizons.push_back(T);
    }
  }
  if (const json* v = find(j, "bounds")) {
    if (!v->is_array()) fail("bounds", "expected an array of bound names");
    for (std::size_t i = 0; i < v->size(); ++i)
      cfg.bounds.push_back(as_string((*v)[i], "bounds[" + std::to_string(i) + "]"));
  }
  if (const json* v = find(j, "slope")) {
    if (!v->is_object()) fail("slope", "expected an object {value, limit}");
    check_keys(*v, "slope", {"value", "limit"});
    cfg.slope.enabled = true;
    if (const json* val = find(*v, "value")) {
      cfg.slope.value = as_string(*val, "slope.value");
      if (cfg.slope.value != "regret" && cfg.slope.value != "forward_regret" &&
          cfg.slope.value != "stability")
        fail("slope.value", "must be regret, forward_regret, or stability");
    }
    if (const json* lim = find(*v, "limit"))
      cfg.slope.limit = as_double(*lim, "slope.limit");
  }
  if (const json* v = find(j, "strict")) cfg.strict = as_bool(*v, "strict");
  if (const json* v = find(j, "validate"))
    cfg.learner.validate = as_bool(*v, "validate");
  if (const json* v = find(j, "out")) cfg.out = as_string(*v, "out");
  if (const json* v = find(j, "format")) {
    cfg.format = as_string(*v, "format");
    if (cfg.format != "csv" && cfg.format != "json")
      fail("format", "must be csv or json");
  }
  return cfg;
}

// --set path=value; the value is JSON when it parses, a bare string otherwise
void apply_override(json& j, const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--set expects path=value, got '" + spec + "'");
  std::string path = spec.substr(0, eq);
  std::string value = spec.substr(eq + 1);
  json* node = &j;
  std::size_t start = 0;
  while (true) {
    auto dot = path.find('.', start);
    std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw ConfigError("--set path has an empty segment: " + path);
    if (!node->is_object()) *node = json::object();
    if (dot == std::string::npos) {
      json parsed = json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

json schedule_json(const Schedule& s) {
  return {{"kind", to_name(s.kind, kScheduleNames)}, {"c", s.c}};
}

json delta_json(const DeltaSchedule& d) {
  return {{"kind", to_name(d.kind, kDeltaNames)},
          {"c", d.is_exact() ? 0.0 : d.c}};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("REGRETLAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min<unsigned>(n, cap);
  }
  return std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1));
}

}  // namespace

FeasibleSet SetSpec::build() const {
  switch (kind) {
    case SetKind::Ball: {
      Vector c = Vector::Zero(d);
      for (int i = 0; i < static_cast<int>(center.size()); ++i) c[i] = center[i];
      return FeasibleSet::ball(std::move(c), radius);
    }
    case SetKind::Box: {
      Vector l(lo.size()), h(hi.size());
      for (std::size_t i = 0; i < lo.size(); ++i) l[i] = lo[i];
      for (std::size_t i = 0; i < hi.size(); ++i) h[i] = hi[i];
      return FeasibleSet::box(std::move(l), std::move(h));
    }
    case SetKind::Simplex:
      return FeasibleSet::simplex(d);
  }
  throw ConfigError("set.kind: invalid");
}

ExperimentConfig parse_config(const std::string& json_text,
                              std::span<const std::string> overrides) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (const std::string& spec : overrides) apply_override(j, spec);
  return config_from(j);
}

ExperimentConfig load_config(const std::string& path,
                             std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

std::string canonical_config(const ExperimentConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["learner"] = learner_name(cfg.learner.kind);
  j["regularizer"] = to_name(cfg.learner.regularizer, kRegNames);
  j["eta"] = schedule_json(cfg.learner.eta);
  j["beta"] = schedule_json(cfg.learner.beta);
  j["delta"] = delta_json(cfg.learner.delta);
  j["batch"] = {{"inner", learner_name(cfg.learner.inner)},
                {"size", cfg.learner.batch_size}};
  j["adversary"] = {{"kind", to_name(cfg.adversary.kind, kGeneratorNames)},
                    {"scale", cfg.adversary.scale},
                    {"curvature", cfg.adversary.curvature},
                    {"bias", cfg.adversary.bias},
                    {"margin", cfg.adversary.margin},
                    {"composite", {{"kind", to_name(cfg.composite, kCompositeNames)},
                                   {"weight", cfg.composite_weight}}}};
  j["set"] = {{"kind", to_name(cfg.set.kind, kSetNames)}, {"d", cfg.set.d},
              {"radius", cfg.set.radius}, {"center", cfg.set.center},
              {"lo", cfg.set.lo}, {"hi", cfg.set.hi}};
  j["seeds"] = cfg.seeds;
  j["horizons"] = cfg.horizons;
  j["bounds"] = cfg.bounds;
  if (cfg.slope.enabled)
    j["slope"] = {{"value", cfg.slope.value}, {"limit", cfg.slope.limit}};
  j["strict"] = cfg.strict;
  j["validate"] = cfg.learner.validate;
  j["out"] = cfg.out;
  j["format"] = cfg.format;
  return j.dump();
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::string text = canonical_config(cfg);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string mode_name(const DeltaSchedule& d) {
  return d.is_exact() ? "exact" : "approx:" + d.describe();
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  const std::string hash = config_hash(cfg);
  const std::string learner = learner_name(cfg.learner.kind);
  const std::string mode = mode_name(cfg.learner.delta);

  struct Job {
    std::uint64_t seed;
    int T;
  };
  std::vector<Job> jobs;
  for (std::uint64_t seed : cfg.seeds)
    for (int T : cfg.horizons) jobs.push_back({seed, T});

  std::vector<std::vector<ResultRow>> per_job(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto work = [&](std::size_t i) {
    const Job& job = jobs[i];
    auto t0 = std::chrono::steady_clock::now();
    auto set = std::make_shared<const FeasibleSet>(cfg.set.build());
    CompositePart comp = cfg.composite == CompositeKind::None
                             ? CompositePart::none()
                             : (cfg.composite == CompositeKind::L1
                                    ? CompositePart::l1(cfg.composite_weight)
                                    : CompositePart::half_squared_l2(cfg.composite_weight));
    auto seq = std::make_shared<const AdversarySequence>(
        AdversarySequence(job.seed, job.T, *set, cfg.adversary, std::move(comp)));
    RunOptions opts;
    opts.strict = cfg.strict;
    Trajectory traj = run(cfg.learner, seq, set, opts);
    Measured m = measure(traj);

    std::vector<BoundVerdict> verdicts;
    auto equivalence = [&] {
      auto [vr, vf] = check_equivalence(traj);
      return std::pair{vr, vf};
    };
    if (cfg.bounds.empty()) {
      auto [vr, vf] = equivalence();
      verdicts.push_back(vr);
      verdicts.push_back(vf);
      for (const auto& name : supported_bounds(traj))
        verdicts.push_back(check_bound(traj, name));
    } else {
      for (const auto& name : cfg.bounds) {
        if (name == "theorem1_regret")
          verdicts.push_back(equivalence().first);
        else if (name == "theorem1_forward_regret")
          verdicts.push_back(equivalence().second);
        else
          verdicts.push_back(check_bound(traj, name));
      }
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();

    ResultRow base;
    base.config_hash = hash;
    base.learner = learner;
    base.mode = mode;
    base.T = job.T;
    base.d = cfg.set.d;
    base.seed = job.seed;
    base.regret = m.regret;
    base.forward_regret = m.forward_regret;
    base.stability = m.stability;
    base.wall_clock_ms = ms;
    for (const BoundVerdict& v : verdicts) {
      ResultRow row = base;
      row.bound_name = v.name;
      row.bound_theoretical = v.theoretical;
      row.bound_empirical = v.empirical;
      row.slack = v.slack;
      row.pass = v.pass;
      per_job[i].push_back(std::move(row));
    }
  };

  unsigned threads = worker_count(jobs.size());
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  if (threads <= 1 || jobs.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<ResultRow> rows;
  for (auto& chunk : per_job)
    for (auto& row : chunk) rows.push_back(std::move(row));

  if (cfg.slope.enabled) {
    for (std::size_t s = 0; s < cfg.seeds.size(); ++s) {
      std::vector<std::pair<int, double>> pts;
      for (std::size_t h = 0; h < cfg.horizons.size(); ++h) {
        const auto& chunk = per_job[s * cfg.horizons.size() + h];
        if (chunk.empty()) continue;
        const ResultRow& r = chunk.front();
        double v = cfg.slope.value == "forward_regret" ? r.forward_regret
                   : cfg.slope.value == "stability"    ? r.stability
                                                       : r.regret;
        pts.emplace_back(r.T, v);
      }
      BoundVerdict v = check_slope(cfg.slope.value + "_slope", pts, cfg.slope.limit);
      ResultRow row;
      row.config_hash = hash;
      row.learner = learner;
      row.mode = mode;
      row.T = 0;  // aggregate over the sweep, not a single horizon
      row.d = cfg.set.d;
      row.seed = cfg.seeds[s];
      row.bound_name = v.name;
      row.bound_theoretical = v.theoretical;
      row.bound_empirical = v.empirical;
      row.slack = v.slack;
      row.pass = v.pass;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string to_csv(std::span<const ResultRow> rows) {
  std::ostringstream out;
  out << "config_hash,learner,mode,T,d,seed,regret,forward_regret,stability,"
         "bound_name,bound_theoretical,bound_empirical,slack,pass,wall_clock_ms\n";
  for (const ResultRow& r : rows) {
    out << r.config_hash << ',' << r.learner << ',' << r.mode << ',' << r.T << ','
        << r.d << ',' << r.seed << ',' << fmt17(r.regret) << ','
        << fmt17(r.forward_regret) << ',' << fmt17(r.stability) << ','
        << r.bound_name << ',' << fmt17(r.bound_theoretical) << ','
        << fmt17(r.bound_empirical) << ',' << fmt17(r.slack) << ','
        << (r.pass ? 1 : 0) << ',' << fmt17(r.wall_clock_ms) << '\n';
  }
  return out.str();
}

std::string to_json(std::span<const ResultRow> rows) {
  json arr = json::array();
  for (const ResultRow& r : rows) {
    arr.push_back({{"config_hash", r.config_hash},
                   {"learner", r.learner},
                   {"mode", r.mode},
                   {"T", r.T},
                   {"d", r.d},
                   {"seed", r.seed},
                   {"regret", r.regret},
                   {"forward_regret", r.forward_regret},
                   {"stability", r.stability},
                   {"bound_name", r.bound_name},
                   {"bound_theoretical", r.bound_theoretical},
                   {"bound_empirical", r.bound_empirical},
                   {"slack", r.slack},
                   {"pass", r.pass},
                   {"wall_clock_ms", r.wall_clock_ms}});
  }
  return arr.dump(2) + "\n";
}

std::vector<ResultRow> rows_from_json(const std::string& text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("rows: ") + e.what());
  }
  if (!arr.is_array()) throw ConfigError("rows: top level must be an array");
  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& o = arr[i];
    std::string path = "rows[" + std::to_string(i) + "]";
    if (!o.is_object()) fail(path, "expected an object");
    ResultRow r;
    r.config_hash = as_string(o.at("config_hash"), path + ".config_hash");
    r.learner = as_string(o.at("learner"), path + ".learner");
    r.mode = as_string(o.at("mode"), path + ".mode");
    r.T = as_int(o.at("T"), path + ".T");
    r.d = as_int(o.at("d"), path + ".d");
    r.seed = o.at("seed").get<std::uint64_t>();
    r.regret = as_double(o.at("regret"), path + ".regret");
    r.forward_regret = as_double(o.at("forward_regret"), path + ".forward_regret");
    r.stability = as_double(o.at("stability"), path + ".stability");
    r.bound_name = as_string(o.at("bound_name"), path + ".bound_name");
    r.bound_theoretical =
        as_double(o.at("bound_theoretical"), path + ".bound_theoretical");
    r.bound_empirical = as_double(o.at("bound_empirical"), path + ".bound_empirical");
    r.slack = as_double(o.at("slack"), path + ".slack");
    r.pass = as_bool(o.at("pass"), path + ".pass");
    r.wall_clock_ms = as_double(o.at("wall_clock_ms"), path + ".wall_clock_ms");
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<int> dyadic_horizons(int lo, int hi) {
  std::vector<int> out;
  for (int T = lo; T <= hi; T *= 2) out.push_back(T);
  return out;
}

}  // namespace regretlab
