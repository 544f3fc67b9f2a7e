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


#include "mph/json_io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mph/error.h"

namespace mph {
namespace {

[[noreturn]] void Bad(const std::string& what) {
  Fail(ErrorCode::kInvalidInput, what);
}

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object()) Bad("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) Bad(std::string("missing field \"") + key + "\"");
  return *it;
}

int IntField(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer()) {
    Bad(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

double Number(const Json& v, const std::string& what) {
  if (!v.is_number()) Bad(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) Bad(what + " must be finite");
  return x;
}

std::vector<double> Numbers(const Json& v, const std::string& what) {
  if (!v.is_array()) Bad(what + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& x : v) out.push_back(Number(x, what + " entry"));
  return out;
}

int CheckM(const Json& j) {
  const int m = IntField(j, "m");
  if (m < 0 || m > kMaxItems) {
    Bad("m must lie in [0, " + std::to_string(kMaxItems) + "]");
  }
  return m;
}

Json EdgesToJson(const Hypergraph& h) {
  Json edges = Json::array();
  for (const auto& [e, w] : h.edges()) {
    edges.push_back({{"set", ItemSetToJson(e)}, {"w", w}});
  }
  return edges;
}

Hypergraph EdgesFromJson(const Json& edges, int m) {
  if (!edges.is_array()) Bad("\"edges\" must be an array");
  Hypergraph h(m);
  for (const Json& e : edges) {
    h.Add(ItemSetFromJson(Field(e, "set"), m), Number(Field(e, "w"), "edge weight"));
  }
  return h;
}

std::optional<double> OptionalFrom(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return Number(*it, key);
}

Json PairToJson(const std::optional<SetPair>& p) {
  if (!p) return nullptr;
  return Json::array({ItemSetToJson(p->first), ItemSetToJson(p->second)});
}

template <typename F>
auto Guarded(F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    Bad(e.what());
  }
}

}  // namespace

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    Bad(std::string("malformed JSON: ") + e.what());
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Bad("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseJson(buffer.str());
}

Json ItemSetToJson(ItemSet s) { return s.Items(); }

ItemSet ItemSetFromJson(const Json& j, int m) {
  if (!j.is_array()) Bad("item set must be an array of indices");
  ItemSet s;
  for (const Json& x : j) {
    if (!x.is_number_integer()) Bad("item index must be an integer");
    const int item = x.get<int>();
    if (item < 0 || item >= m) {
      Bad("item index " + std::to_string(item) + " outside [0, " +
          std::to_string(m) + ")");
    }
    s = s.With(item);
  }
  return s;
}

Json ValuationToJson(const Valuation& v) {
  Json j = {{"m", ItemCount(v)}};
  if (const auto* f = std::get_if<ExplicitValuation>(&v)) {
    j["kind"] = "explicit";
    j["table"] = f->table();
  } else if (const auto* h = std::get_if<Hypergraph>(&v)) {
    j["kind"] = "hypergraph";
    j["edges"] = EdgesToJson(*h);
  } else if (const auto* s = std::get_if<SymmetricValuation>(&v)) {
    j["kind"] = "symmetric";
    j["profile"] = s->profile();
  } else {
    const auto& r = std::get<MphRepresentation>(v);
    j["kind"] = "mph";
    j["k"] = r.k();
    Json clauses = Json::array();
    for (const Hypergraph& c : r.clauses()) clauses.push_back(EdgesToJson(c));
    j["clauses"] = std::move(clauses);
  }
  return j;
}

Valuation ValuationFromJson(const Json& j) {
  return Guarded([&]() -> Valuation {
    const int m = CheckM(j);
    const Json& kind = Field(j, "kind");
    if (!kind.is_string()) Bad("\"kind\" must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "explicit") {
      std::vector<double> table = Numbers(Field(j, "table"), "table");
      if (table.empty()) Bad("empty table");
      return ExplicitValuation(m, std::move(table));
    }
    if (k == "hypergraph") return EdgesFromJson(Field(j, "edges"), m);
    if (k == "symmetric") {
      std::vector<double> profile = Numbers(Field(j, "profile"), "profile");
      if (static_cast<int>(profile.size()) != m + 1) {
        Bad("profile must have m + 1 entries");
      }
      return SymmetricValuation(std::move(profile));
    }
    if (k == "mph") {
      const Json& clauses = Field(j, "clauses");
      if (!clauses.is_array()) Bad("\"clauses\" must be an array");
      std::vector<Hypergraph> hs;
      int rank = 1;
      for (const Json& c : clauses) {
        hs.push_back(EdgesFromJson(c.is_object() ? Field(c, "edges") : c, m));
        rank = std::max(rank, hs.back().ranks().rank);
      }
      const int level = j.contains("k") ? IntField(j, "k") : rank;
      return MphRepresentation(m, level, std::move(hs));
    }
    Bad("unknown valuation kind \"" + k + "\"");
  });
}

Json InstanceToJson(const AuctionInstance& inst) {
  Json bidders = Json::array();
  for (const Valuation& v : inst.bidders) bidders.push_back(ValuationToJson(v));
  const InstanceMetadata& md = inst.metadata;
  Json meta = Json::object();
  if (!md.construction.empty()) meta["construction"] = md.construction;
  if (md.k) meta["k"] = *md.k;
  if (md.known_opt) meta["opt"] = *md.known_opt;
  if (md.known_lp) meta["lp"] = *md.known_lp;
  if (md.known_gap) meta["gap"] = *md.known_gap;
  if (md.poa) meta["poa"] = *md.poa;
  if (!md.params.empty()) meta["params"] = md.params;
  return {{"m", inst.m}, {"bidders", std::move(bidders)}, {"metadata", meta}};
}

AuctionInstance InstanceFromJson(const Json& j) {
  return Guarded([&] {
    AuctionInstance inst;
    inst.m = CheckM(j);
    const Json& bidders = Field(j, "bidders");
    if (!bidders.is_array() || bidders.empty()) {
      Bad("\"bidders\" must be a nonempty array");
    }
    for (const Json& b : bidders) inst.bidders.push_back(ValuationFromJson(b));
    if (auto it = j.find("metadata"); it != j.end() && it->is_object()) {
      const Json& md = *it;
      InstanceMetadata& out = inst.metadata;
      if (auto c = md.find("construction"); c != md.end() && c->is_string()) {
        out.construction = c->get<std::string>();
      }
      if (auto k = md.find("k"); k != md.end() && k->is_number_integer()) {
        out.k = k->get<int>();
      }
      out.known_opt = OptionalFrom(md, "opt");
      out.known_lp = OptionalFrom(md, "lp");
      out.known_gap = OptionalFrom(md, "gap");
      out.poa = OptionalFrom(md, "poa");
      if (auto p = md.find("params"); p != md.end() && p->is_object()) {
        for (auto it2 = p->begin(); it2 != p->end(); ++it2) {
          out.params[it2.key()] = Number(it2.value(), it2.key());
        }
      }
    }
    ValidateInstance(inst);
    return inst;
  });
}

Generated GeneratedFromJson(const Json& j) {
  if (j.is_object() && j.contains("bidders")) return InstanceFromJson(j);
  return ValuationFromJson(j);
}

Json GeneratedToJson(const Generated& g) {
  if (const auto* v = std::get_if<Valuation>(&g)) return ValuationToJson(*v);
  return InstanceToJson(std::get<AuctionInstance>(g));
}

Json FractionalToJson(const FractionalSolution& sol) {
  Json entries = Json::array();
  for (const FractionalEntry& e : sol.entries) {
    entries.push_back({{"i", e.bidder}, {"set", ItemSetToJson(e.set)}, {"x", e.x}});
  }
  Json j = {{"entries", std::move(entries)}, {"objective", sol.objective}};
  if (sol.exact_objective) j["exact_objective"] = *sol.exact_objective;
  return j;
}

FractionalSolution FractionalFromJson(const Json& j) {
  return Guarded([&] {
    FractionalSolution sol;
    const Json& entries = Field(j, "entries");
    if (!entries.is_array()) Bad("\"entries\" must be an array");
    for (const Json& e : entries) {
      FractionalEntry fe;
      fe.bidder = IntField(e, "i");
      if (fe.bidder < 0) Bad("bidder index must be nonnegative");
      fe.set = ItemSetFromJson(Field(e, "set"), kMaxItems);
      fe.x = Number(Field(e, "x"), "x");
      sol.entries.push_back(fe);
    }
    sol.objective = Number(Field(j, "objective"), "objective");
    return sol;
  });
}

Json AllocationToJson(const Allocation& a) {
  Json out = Json::array();
  for (ItemSet s : a.bundles) out.push_back(ItemSetToJson(s));
  return out;
}

Json RoundingStatsToJson(const RoundingStats& s) {
  return {{"trials", s.trials},
          {"mean_welfare", s.mean_welfare},
          {"std_err", s.std_err},
          {"ratio_to_lp", s.ratio_to_lp},
          {"lp_objective", s.lp_objective},
          {"csv_header", s.CsvHeader()},
          {"csv", s.CsvRecord()}};
}

Json PleWitnessToJson(const PleWitness& w, bool valid) {
  Json j = ValuationToJson(w.envelope);
  j["target_set"] = ItemSetToJson(w.target_set);
  j["k"] = w.k;
  j["valid"] = valid;
  return j;
}

Json SymmetricCertificateToJson(const SymmetricLpCertificate& c) {
  return {{"m", c.m},
          {"r", c.r},
          {"primal_x", c.primal_x},
          {"primal_value", c.primal_value},
          {"dual_y", c.dual_y},
          {"dual_z", c.dual_z},
          {"dual_value", c.dual_value},
          {"gap", c.gap},
          {"dual_residual", c.dual_residual}};
}

Json PropertyReportToJson(const PropertyReport& r) {
  Json j = {{"normalized", r.normalized},   {"monotone", r.monotone},
            {"nonnegative", r.nonnegative}, {"submodular", r.submodular},
            {"subadditive", r.subadditive}, {"symmetric", r.symmetric}};
  Json witnesses = Json::object();
  if (r.monotone_witness) witnesses["monotone"] = PairToJson(r.monotone_witness);
  if (r.submodular_witness) {
    witnesses["submodular"] = PairToJson(r.submodular_witness);
  }
  if (r.subadditive_witness) {
    witnesses["subadditive"] = PairToJson(r.subadditive_witness);
  }
  if (r.symmetric_witness) witnesses["symmetric"] = PairToJson(r.symmetric_witness);
  if (r.negative_witness) {
    witnesses["nonnegative"] = ItemSetToJson(*r.negative_witness);
  }
  if (!witnesses.empty()) j["witnesses"] = std::move(witnesses);
  return j;
}

Json CceMetricsToJson(const CceMetrics& c) {
  return {{"expected_sw", c.expected_sw}, {"sw_std_err", c.sw_std_err},
          {"opt", c.opt},                 {"ratio", c.ratio},
          {"revenue", c.revenue}};
}

Json NeReportToJson(const NeReport& r) {
  return {{"closed_form_max_abs", r.closed_form_max_abs},
          {"aux_min_gap", r.aux_min_gap},
          {"aux_abstains", r.aux_abstains},
          {"mc_equal_max_abs", r.mc_equal_max_abs},
          {"mc_unequal_max", r.mc_unequal_max},
          {"mc_aux_max", r.mc_aux_max},
          {"worst_deviation", r.worst_deviation},
          {"welfare_mean", r.welfare_mean},
          {"welfare_std_err", r.welfare_std_err},
          {"opt", r.opt},
          {"measured_poa", r.measured_poa},
          {"metadata_poa", r.metadata_poa},
          {"passed", r.passed}};
}

Json SmoothnessReportToJson(const SmoothnessReport& r) {
  return {{"trials", r.trials},         {"opt", r.opt},
          {"mean_lhs", r.mean_lhs},     {"lhs_std_err", r.lhs_std_err},
          {"mean_rhs", r.mean_rhs},     {"margin", r.margin},
          {"mean_revenue", r.mean_revenue}, {"violations", r.violations},
          {"worst_margin", r.worst_margin}};
}

Json ExpectationReportToJson(const ExpectationReport& r) {
  Json results = Json::array();
  for (const ExpectationResult& e : r.results) {
    results.push_back({{"name", e.name},
                       {"tag", e.tag},
                       {"relation", e.relation},
                       {"expected", e.expected},
                       {"actual", e.actual},
                       {"ok", e.ok}});
  }
  return {{"entry", r.entry},
          {"params", r.params},
          {"results", std::move(results)},
          {"passed", r.passed}};
}

}  // namespace mph
