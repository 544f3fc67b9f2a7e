// Copyright 2026 The MPH Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "mph/cli.h"

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mph/auction.h"
#include "mph/instances.h"
#include "mph/json_io.h"
#include "mph/ple.h"
#include "mph/properties.h"
#include "mph/valuation.h"
#include "mph/welfare.h"

namespace mph {
namespace {

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) Fail(ErrorCode::kInvalidInput, "cannot write " + path);
  f << text;
}

void Emit(const Json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    WriteText(path, text);
  }
}

Json RanksToJson(const Ranks& r) {
  return {{"rank", r.rank},
          {"positive_rank", r.positive_rank},
          {"negative_rank", r.negative_rank}};
}

const char* KindName(const Valuation& v) {
  static constexpr const char* kNames[] = {"explicit", "hypergraph",
                                           "symmetric", "mph"};
  return kNames[v.index()];
}

Json LevelToJson(const std::optional<int>& level) {
  return level ? Json(*level) : Json(nullptr);
}

Json Classify(const Valuation& v, int sample) {
  const int m = ItemCount(v);
  Json r = {{"m", m}, {"kind", KindName(v)}};
  Json skipped = Json::object();
  std::optional<ExplicitValuation> f;
  if (m <= kMaxDegreeItems) f = ToExplicit(v);

  if (const auto* h = std::get_if<Hypergraph>(&v)) {
    r["ranks"] = RanksToJson(h->ranks());
  } else if (f) {
    r["ranks"] = RanksToJson(ToHypergraph(*f).ranks());
  } else {
    skipped["ranks"] = "m > " + std::to_string(kMaxDegreeItems);
  }
  if (const auto* rep = std::get_if<MphRepresentation>(&v)) {
    r["clauses"] = rep->clauses().size();
    r["representation_k"] = rep->k();
  }

  std::optional<PropertyReport> props;
  if (f && m <= kMaxPropertyItems) {
    props = CheckProperties(*f);
    r["properties"] = PropertyReportToJson(*props);
    r["monotone"] = props->monotone;
    r["submodular"] = props->submodular;
  } else {
    skipped["properties"] = "m > " + std::to_string(kMaxPropertyItems);
  }

  if (f) {
    r["supermodular_degree"] = SupermodularDegree(*f).degree;
  } else {
    skipped["supermodular_degree"] = "m > " + std::to_string(kMaxDegreeItems);
  }

  if (f && m <= kMaxLevelItems) {
    const HierarchyLevel mph = MphLevel(*f);
    r["mph_level"] = LevelToJson(mph.level);
    r["ple_level"] = LevelToJson(PleLevel(*f).level);
  } else if (f && sample > 0 && m <= kMaxSampledLevelItems) {
    LevelOptions options;
    options.sample_restrictions = sample;
    const HierarchyLevel mph = MphLevel(*f, options);
    r["mph_level_lower_bound"] = LevelToJson(mph.level);
    r["restrictions_checked"] = mph.restrictions_checked;
  } else {
    skipped["mph_level"] = "m > " + std::to_string(kMaxLevelItems);
  }

  std::optional<SymmetricValuation> sym;
  if (const auto* s = std::get_if<SymmetricValuation>(&v)) {
    sym = *s;
  } else if (f && props && props->symmetric) {
    std::vector<double> profile(m + 1);
    for (int t = 0; t <= m; ++t) profile[t] = (*f)(ItemSet::Full(t));
    sym = SymmetricValuation(profile);
  }
  if (sym) {
    try {
      r["symmetric_mph_level"] = SymmetricMphLevel(*sym);
    } catch (const Error& e) {
      r["symmetric_mph_level"] = nullptr;
      skipped["symmetric_mph_level"] = e.what();
    }
  }
  if (!skipped.empty()) r["skipped"] = std::move(skipped);
  return r;
}

ItemSet ParseItemList(const std::string& text, int m) {
  std::vector<int> items;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string tok = text.substr(pos, next - pos);
    int x = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || p != tok.data() + tok.size() || x < 0 || x >= m) {
      Fail(ErrorCode::kInvalidInput, "bad item list \"" + text + "\"");
    }
    items.push_back(x);
    pos = next + 1;
  }
  return ItemSet::FromItems(items);
}

std::vector<int> ParseOrdering(const std::string& text, int m) {
  std::vector<int> order;
  if (text.empty()) {
    order.resize(m);
    std::iota(order.begin(), order.end(), 0);
    return order;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    order.push_back(std::stoi(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return order;
}

Json PleCheckToJson(const PleCheck& c) {
  return {{"valid", c.valid},
          {"nonnegative", c.nonnegative},
          {"rank_ok", c.rank_ok},
          {"matches_target", c.matches_target},
          {"dominated", c.dominated},
          {"target_gap", c.target_gap},
          {"worst_excess", c.worst_excess},
          {"worst_set", ItemSetToJson(c.worst_set)}};
}

struct PleArgs {
  std::string input;
  std::string set;
  int k = 0;
  std::string method = "lp";
  std::string ordering;
  bool certificate = false;
  int cert_m = 0;
  int cert_r = 0;
};

Json RunPle(const PleArgs& a) {
  if (a.certificate) {
    return SymmetricCertificateToJson(SymmetricWorstcaseLp(a.cert_m, a.cert_r));
  }
  if (a.input.empty()) {
    Fail(ErrorCode::kInvalidInput, "ple needs an input valuation");
  }
  const Valuation v = ValuationFromJson(ReadJsonFile(a.input));
  const int m = ItemCount(v);

  if (a.method == "symmetric") {
    const auto* s = std::get_if<SymmetricValuation>(&v);
    if (s == nullptr) {
      Fail(ErrorCode::kInvalidInput, "method symmetric needs a symmetric input");
    }
    const int r = a.k > 0 ? a.k : SymmetricMphLevel(*s);
    const SymmetricPleWitness w = CanonicalSymmetricPle(*s, r);
    Json j = m <= 16 ? PleWitnessToJson(w.Materialize(), w.valid)
                     : Json{{"m", m}, {"k", r}, {"valid", w.valid}};
    j["method"] = a.method;
    j["edge_weight"] = w.edge_weight;
    j["envelope_profile"] = w.envelope_profile;
    j["worst_t"] = w.worst_t;
    j["worst_excess"] = w.worst_excess;
    return j;
  }

  if (m > kMaxPleLpItems) {
    Fail(ErrorCode::kCapacity,
         "ple supports m <= " + std::to_string(kMaxPleLpItems));
  }
  const ExplicitValuation f = ToExplicit(v);
  const ItemSet s = a.set.empty() ? ItemSet::Full(m) : ParseItemList(a.set, m);
  PleWitness w;
  Json extra = Json::object();
  if (a.method == "lp") {
    const int k = a.k > 0 ? a.k : std::max(1, s.size());
    const PleLpResult lp = PleMaxLp(f, s, k);
    w = {lp.envelope, s, k};
    extra["opt_value"] = std::isfinite(lp.opt_value) ? Json(lp.opt_value)
                                                      : Json(nullptr);
    extra["f_target"] = f(s);
    extra["certified"] = lp.certified;
  } else if (a.method == "flow") {
    w = Ple2Flow(f, s);
  } else if (a.method == "laminar") {
    w = PleLaminar(f, s);
  } else if (a.method == "matching") {
    w = Ple1Matching(f, s);
  } else if (a.method == "supermodular") {
    const std::vector<int> order = ParseOrdering(a.ordering, m);
    w = SupermodularPle(f, order, s);
  } else {
    Fail(ErrorCode::kInvalidInput, "unknown method " + a.method);
  }
  const PleCheck check = ValidatePle(f, w);
  Json j = PleWitnessToJson(w, check.valid);
  j["method"] = a.method;
  j["check"] = PleCheckToJson(check);
  j.update(extra);
  return j;
}

struct WelfareArgs {
  std::string input;
  bool exact = false;
  bool lp = false;
  bool column_generation = false;
  bool certify = false;
  int round = 0;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string solution;
};

Json RunWelfare(const WelfareArgs& a) {
  const AuctionInstance inst = InstanceFromJson(ReadJsonFile(a.input));
  const bool both = !a.exact && !a.lp;
  const bool want_opt = a.exact || both;
  const bool want_lp = a.lp || both || a.round > 0 || a.certify;
  Json r = {{"n", inst.n()}, {"m", inst.m}};
  if (!inst.metadata.construction.empty()) {
    r["construction"] = inst.metadata.construction;
  }

  std::optional<WelfareResult> opt;
  if (want_opt) {
    opt = OptimalWelfare(inst);
    r["opt"] = opt->value;
    r["allocation"] = AllocationToJson(opt->allocation);
  }
  std::optional<FractionalSolution> sol;
  if (want_lp) {
    ConfigLpOptions options;
    options.mode = a.column_generation ? ConfigLpMode::kColumnGeneration
                                       : ConfigLpMode::kExplicit;
    options.exact_verify = a.certify;
    sol = SolveConfigLp(inst, options);
    Json lp = FractionalToJson(*sol);
    lp["columns"] = sol->columns;
    lp["iterations"] = sol->iterations;
    lp["pricing_rounds"] = sol->pricing_rounds;
    lp["mode"] = a.column_generation ? "column_generation" : "explicit";
    r["lp"] = std::move(lp);
    if (!a.solution.empty()) WriteText(a.solution, FractionalToJson(*sol).dump(2) + "\n");
  }
  if (opt && sol) {
    if (opt->value > 0.0) {
      r["gap"] = sol->objective / opt->value;
      if (sol->exact_objective) {
        const mpq_class gap = mpq_class(*sol->exact_objective) / mpq_class(opt->value);
        r["gap_exact"] = gap.get_str();
      }
    } else {
      r["gap"] = nullptr;
    }
  }
  if (a.round > 0) {
    const RoundingStats stats =
        EstimateRoundedWelfare(*sol, inst, a.round, a.seed, a.threads);
    r["rounding"] = RoundingStatsToJson(stats);
    r["rounding"]["seed"] = a.seed;
  }
  return r;
}

struct AuctionArgs {
  std::string input;
  long learn = 0;
  double grid = 0.0;
  double eta = 0.0;
  std::string rule = "first";
  std::uint64_t seed = 1;
  long trace_every = 0;
  std::string csv;
  bool verify_ne = false;
  long samples = 1000000;
  int grid_points = 100;
  long welfare_samples = 20000;
  bool smoothness = false;
  double lambda = 1.0 - std::exp(-1.0);
  double mu = 1.0;
  std::string deviation = "random_first_price";
  int deviation_k = 1;
  long trials = 10000;
  int threads = 0;
};

Json RunAuction(const AuctionArgs& a, bool& failed) {
  const AuctionInstance inst = InstanceFromJson(ReadJsonFile(a.input));
  const std::optional<PaymentRule> rule = ParsePaymentRule(a.rule);
  if (!rule) Fail(ErrorCode::kInvalidInput, "unknown rule " + a.rule);

  if (a.verify_ne) {
    const InstanceMetadata& md = inst.metadata;
    if (md.construction != "poa_lb" || !md.k) {
      Fail(ErrorCode::kPrecondition, "--verify-ne needs a poa_lb instance");
    }
    const auto planes = md.params.find("planes");
    const PoaLowerBound lb = PoaLbInstance(
        *md.k, planes == md.params.end() ? 0 : static_cast<int>(planes->second));
    if (lb.instance.m != inst.m || lb.instance.n() != inst.n()) {
      Fail(ErrorCode::kPrecondition, "instance does not match its metadata");
    }
    NeVerifyOptions options;
    options.grid_points = a.grid_points;
    options.samples = a.samples;
    options.welfare_samples = a.welfare_samples;
    options.seed = a.seed;
    options.threads = a.threads;
    const NeReport report = VerifyMixedNe(lb, options);
    failed = !report.passed;
    Json j = NeReportToJson(report);
    j["k"] = lb.k;
    j["planes"] = lb.planes;
    j["seed"] = a.seed;
    return j;
  }

  if (a.smoothness) {
    const std::optional<Deviation> dev = ParseDeviation(a.deviation);
    if (!dev) Fail(ErrorCode::kInvalidInput, "unknown deviation " + a.deviation);
    SmoothnessOptions options;
    options.lambda = a.lambda;
    options.mu = a.mu;
    options.deviation = *dev;
    options.k = a.deviation_k;
    options.trials = a.trials;
    options.seed = a.seed;
    const SmoothnessReport report = SmoothnessCheck(inst, options);
    failed = report.violations > 0;
    Json j = SmoothnessReportToJson(report);
    j["lambda"] = a.lambda;
    j["mu"] = a.mu;
    j["deviation"] = DeviationName(*dev);
    return j;
  }

  LearnConfig config;
  config.iterations = a.learn > 0 ? a.learn : 10000;
  config.grid_step = a.grid;
  config.learning_rate = a.eta;
  config.seed = a.seed;
  config.rule = *rule;
  config.trace_every = a.trace_every;
  const EmpiricalCce cce = NoRegretLearn(inst, config);
  const CceMetrics metrics = ComputeCceMetrics(inst, cce);
  if (!a.csv.empty()) WriteText(a.csv, cce.TraceCsv());

  std::vector<std::size_t> sizes;
  for (const ActionSet& s : cce.actions) sizes.push_back(s.size());
  Json j = {{"iterations", cce.iterations},
            {"rule", PaymentRuleName(cce.rule)},
            {"grid_step", cce.grid_step},
            {"seed", a.seed},
            {"action_counts", sizes},
            {"learning_rate", cce.learning_rate},
            {"regret", cce.regret},
            {"regret_bound", cce.regret_bound},
            {"max_regret", cce.regret.empty()
                               ? 0.0
                               : *std::max_element(cce.regret.begin(),
                                                   cce.regret.end())},
            {"metrics", CceMetricsToJson(metrics)},
            {"poa_ratio", metrics.ratio}};
  if (inst.metadata.k) j["k"] = *inst.metadata.k;
  if (!a.csv.empty()) j["trace_csv"] = a.csv;
  return j;
}

Params ParseParams(const std::vector<std::string>& pairs) {
  Params p = Params::object();
  for (const std::string& kv : pairs) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      Fail(ErrorCode::kInvalidInput, "parameter \"" + kv + "\" is not key=value");
    }
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    const char* first = val.data();
    const char* last = val.data() + val.size();
    long long i = 0;
    if (auto [ptr, ec] = std::from_chars(first, last, i);
        ec == std::errc() && ptr == last) {
      p[key] = i;
      continue;
    }
    char* end = nullptr;
    const double d = std::strtod(val.c_str(), &end);
    if (val.empty() || end != val.c_str() + val.size() || !std::isfinite(d)) {
      Fail(ErrorCode::kInvalidInput, "parameter " + key + " is not a number");
    }
    p[key] = d;
  }
  return p;
}

Json CatalogToJson() {
  Json list = Json::array();
  for (const CatalogEntry& e : Catalog()) {
    Json params = Json::array();
    for (const ParamSpec& s : e.params) {
      params.push_back({{"name", s.name},
                        {"default", s.default_value},
                        {"description", s.description}});
    }
    list.push_back({{"name", e.name},
                    {"description", e.description},
                    {"produces", e.produces},
                    {"params", std::move(params)},
                    {"expectations", e.expectations}});
  }
  return list;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCapacity:
      return kExitCapacity;
    case ErrorCode::kSolver:
    case ErrorCode::kVerification:
      return kExitVerification;
    case ErrorCode::kInvalidInput:
    case ErrorCode::kUnsupported:
    case ErrorCode::kPrecondition:
    case ErrorCode::kNotMonotone:
      return kExitInput;
  }
  return kExitVerification;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"MPH-k set functions, welfare and auctions", "mph"};
  app.require_subcommand(1);
  std::string output;

  auto* classify = app.add_subcommand("classify", "Classify a valuation");
  std::string classify_input;
  int sample = 0;
  classify->add_option("input", classify_input, "valuation JSON")->required();
  classify->add_option("--sample", sample,
                       "random restrictions for a level lower bound when "
                       "10 < m <= 14");
  classify->add_option("-o,--output", output, "report path");

  auto* ple = app.add_subcommand("ple", "Build and check a positive lower envelope");
  PleArgs pa;
  ple->add_option("input", pa.input, "valuation JSON");
  ple->add_option("--set", pa.set, "target set, comma separated (default all)");
  ple->add_option("-k,--k", pa.k, "envelope rank");
  ple->add_option("--method", pa.method, "construction")
      ->check(CLI::IsMember(
          {"lp", "flow", "laminar", "matching", "supermodular", "symmetric"}));
  ple->add_option("--ordering", pa.ordering,
                  "item order for the supermodular construction");
  ple->add_flag("--certificate", pa.certificate,
                "solve the worst-case symmetric LP for --m and --r");
  ple->add_option("--m", pa.cert_m, "items for --certificate");
  ple->add_option("--r", pa.cert_r, "rank for --certificate");
  ple->add_option("-o,--output", output, "report path");

  auto* welfare = app.add_subcommand("welfare", "Optimal and LP welfare");
  WelfareArgs wa;
  welfare->add_option("input", wa.input, "instance JSON")->required();
  welfare->add_flag("--exact", wa.exact, "optimal integral welfare");
  welfare->add_flag("--lp", wa.lp, "configuration LP");
  welfare->add_flag("--cg", wa.column_generation,
                    "solve the LP by column generation");
  welfare->add_flag("--certify", wa.certify, "exact rational LP value");
  welfare->add_option("--round", wa.round, "rounding trials")
      ->check(CLI::NonNegativeNumber);
  welfare->add_option("--seed", wa.seed, "rounding seed");
  welfare->add_option("--threads", wa.threads, "worker threads (0 = all)");
  welfare->add_option("--solution", wa.solution, "write the LP solution here");
  welfare->add_option("-o,--output", output, "report path");

  auto* auction = app.add_subcommand("auction", "Simultaneous item auctions");
  AuctionArgs aa;
  auction->add_option("input", aa.input, "instance JSON")->required();
  auction->add_option("--learn", aa.learn, "learning iterations")
      ->check(CLI::PositiveNumber);
  auction->add_option("--grid", aa.grid, "bid grid step (0 = default)")
      ->check(CLI::NonNegativeNumber);
  auction->add_option("--eta", aa.eta, "learning rate (0 = default)")
      ->check(CLI::NonNegativeNumber);
  auction->add_option("--rule", aa.rule, "payment rule")
      ->check(CLI::IsMember({"first", "second"}));
  auction->add_option("--seed", aa.seed, "seed");
  auction->add_option("--trace-every", aa.trace_every, "trace row spacing");
  auction->add_option("--csv", aa.csv, "write the learning trace here");
  auto* verify_flag =
      auction->add_flag("--verify-ne", aa.verify_ne, "check the mixed equilibrium");
  auction->add_option("--samples", aa.samples, "Monte Carlo samples");
  auction->add_option("--grid-points", aa.grid_points, "closed form grid");
  auction->add_option("--welfare-samples", aa.welfare_samples,
                      "equilibrium welfare samples");
  auto* smooth_flag =
      auction->add_flag("--smoothness", aa.smoothness, "smoothness spot check");
  auction->add_option("--lambda", aa.lambda, "smoothness lambda");
  auction->add_option("--mu", aa.mu, "smoothness mu");
  auction->add_option("--deviation", aa.deviation, "smoothness deviation")
      ->check(CLI::IsMember({"price_scale", "sample_max", "random_first_price"}));
  auction->add_option("--deviation-k", aa.deviation_k, "deviation scale");
  auction->add_option("--trials", aa.trials, "smoothness profiles");
  auction->add_option("--threads", aa.threads, "worker threads (0 = all)");
  auction->add_option("-o,--output", output, "report path");
  verify_flag->excludes(smooth_flag);

  auto* gen = app.add_subcommand("gen", "Generate catalog instances");
  std::string gen_name;
  std::vector<std::string> gen_params;
  bool list = false;
  gen->add_flag("--list", list, "list the catalog");
  gen->add_option("name", gen_name, "catalog entry");
  gen->add_option("-p,--param", gen_params, "key=value");
  gen->add_option("-o,--output", output, "output path");

  auto* verify = app.add_subcommand("verify", "Check catalog expectations");
  std::string verify_name;
  std::vector<std::string> verify_params;
  bool all = false;
  verify->add_flag("--all", all, "every entry with default parameters");
  verify->add_option("name", verify_name, "catalog entry");
  verify->add_option("-p,--param", verify_params, "key=value");
  verify->add_option("-o,--output", output, "report path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    bool failed = false;
    Json report;
    if (*classify) {
      report = Classify(ValuationFromJson(ReadJsonFile(classify_input)), sample);
    } else if (*ple) {
      report = RunPle(pa);
    } else if (*welfare) {
      report = RunWelfare(wa);
    } else if (*auction) {
      report = RunAuction(aa, failed);
    } else if (*gen) {
      if (list) {
        report = CatalogToJson();
      } else if (gen_name.empty()) {
        Fail(ErrorCode::kInvalidInput, "gen needs an entry name or --list");
      } else {
        report = GeneratedToJson(Gen(gen_name, ParseParams(gen_params)));
      }
    } else if (*verify) {
      if (all) {
        report = Json::array();
        for (const CatalogEntry& e : Catalog()) {
          const ExpectationReport r = VerifyExpectations(e.name);
          failed = failed || !r.passed;
          report.push_back(ExpectationReportToJson(r));
        }
      } else if (verify_name.empty()) {
        Fail(ErrorCode::kInvalidInput, "verify needs an entry name or --all");
      } else {
        const ExpectationReport r =
            VerifyExpectations(verify_name, ParseParams(verify_params));
        failed = !r.passed;
        report = ExpectationReportToJson(r);
      }
    }
    Emit(report, output, out);
    if (failed) {
      err << "verification failed\n";
      return kExitVerification;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerification;
  }
}

}  // namespace mph
