// Command-line entry points: generators, checker, construction emitters,
// size sweeps, game runs, restriction sampling and the brute-force oracle.
//
// Exit codes: 0 valid / success, 1 invalid, 2 usage error, 3 budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "resd/constructions.hpp"
#include "resd/families.hpp"
#include "resd/games.hpp"
#include "resd/oracle.hpp"
#include "resd/proof.hpp"
#include "resd/restrictions.hpp"

using namespace resd;

namespace {

struct CommonOpts {
  std::string family = "lnp";
  int n = 4;
  int d = 1;
  int k = 1;
  std::string graph = "complete";
  uint64_t graph_seed = 1;
  double graph_avg_deg = 0.0;
  bool dedupe = false;
};

Graph build_graph(const CommonOpts& o) {
  if (o.graph == "complete") return Graph::complete(o.n);
  if (o.graph == "path") return Graph::path(o.n);
  if (o.graph == "er") {
    double deg = o.graph_avg_deg > 0 ? o.graph_avg_deg : 3.0 * std::log(static_cast<double>(o.n));
    return Graph::erdos_renyi(o.n, deg, o.graph_seed);
  }
  if (o.graph.rfind("file:", 0) == 0) {
    std::ifstream in(o.graph.substr(5));
    if (!in) throw CLI::ValidationError("--graph", "cannot open edge list file");
    std::stringstream ss;
    ss << in.rdbuf();
    return Graph::parse_edge_list(ss.str(), o.n);
  }
  throw CLI::ValidationError("--graph", "expected complete | path | er | file:<path>");
}

FamilySpec build_spec(const CommonOpts& o) {
  FamilySpec spec;
  if (!family_from_name(o.family, spec.family))
    throw CLI::ValidationError("--family", "unknown family " + o.family);
  spec.n = o.n;
  bool relativized = spec.family == Family::DRLNP || spec.family == Family::DRLNPGraph ||
                     spec.family == Family::DRIP || spec.family == Family::DRVIP;
  spec.d = relativized ? o.d : 0;
  bool weighted = spec.family == Family::PHP || spec.family == Family::SigmaPrime;
  spec.k = weighted ? o.k : 0;
  spec.dedupe = o.dedupe;
  if (spec.family == Family::DRLNPGraph) spec.graph = build_graph(o);
  if (spec.family == Family::SigmaPrime) {
    spec.base_family = Family::LNP;
    spec.base_n = o.n;
  }
  return spec;
}

void add_common(CLI::App* app, CommonOpts& o) {
  app->add_option("--family", o.family, "family name");
  app->add_option("--n", o.n, "universe size");
  app->add_option("--d", o.d, "relativization depth");
  app->add_option("--k", o.k, "weight parameter");
  app->add_option("--graph", o.graph, "complete | path | er | file:<path>");
  app->add_option("--graph-seed", o.graph_seed, "seed for the er graph");
  app->add_option("--graph-avg-deg", o.graph_avg_deg, "average degree for the er graph");
  app->add_flag("--dedupe", o.dedupe, "drop tautological and duplicate lines");
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// content-addressed result cache for oracle runs, keyed by family
// parameters and operation; enabled through RESD_CACHE_DIR
std::string cache_path(const std::string& key) {
  const char* dir = std::getenv("RESD_CACHE_DIR");
  if (!dir || !*dir) return "";
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << dir << "/resd-" << std::hex << h << ".txt";
  return os.str();
}

std::optional<std::string> cache_lookup(const std::string& key) {
  std::string path = cache_path(key);
  if (path.empty()) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string stored_key, value;
  if (!std::getline(in, stored_key) || stored_key != key) return std::nullopt;
  std::getline(in, value);
  return value;
}

void cache_store(const std::string& key, const std::string& value) {
  std::string path = cache_path(key);
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  out << key << "\n" << value << "\n";
}

constructions::Emitted emit_for(const std::string& family, int d, int n, int k) {
  if (family == "drlnp") return constructions::refute_drlnp(d, n);
  if (family == "ip") return constructions::refute_ip(n);
  if (family == "drip") return constructions::refute_drip(d, n);
  if (family == "drvip" || family == "rvip") return constructions::refute_rvip(d, n);
  if (family == "sigma-pst") return constructions::refute_sigma_pst(n, k);
  throw CLI::ValidationError("--family", "no construction for family " + family);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"bounded-conjunction resolution toolkit"};
  app.require_subcommand(1);

  CommonOpts gen_o;
  std::string gen_out = "-", gen_format = "auto";
  auto* gen = app.add_subcommand("gen", "emit a family instance");
  add_common(gen, gen_o);
  gen->add_option("--out", gen_out, "output path or -");
  gen->add_option("--format", gen_format, "dimacs | jsonl | auto");

  CommonOpts chk_o;
  std::string chk_proof;
  auto* chk = app.add_subcommand("check", "verify a proof against a generated instance");
  add_common(chk, chk_o);
  chk->add_option("--proof", chk_proof, "proof file (json lines)")->required();

  CommonOpts ref_o;
  std::string ref_out = "";
  auto* ref = app.add_subcommand("refute", "emit a construction proof");
  add_common(ref, ref_o);
  ref->add_option("--out", ref_out, "proof output path");

  CommonOpts sw_o;
  std::string sw_range = "4..12", sw_out = "";
  auto* sw = app.add_subcommand("sweep", "size table over an n range with a log-log fit");
  add_common(sw, sw_o);
  sw->add_option("--n-range", sw_range, "a..b");
  sw->add_option("--out", sw_out, "csv output path");

  CommonOpts gm_o;
  std::string gm_variant = "rip";
  int gm_plays = 0;
  uint64_t gm_seed = 1;
  std::string gm_transcript = "";
  auto* gm = app.add_subcommand("game", "adversary games: minimax and property runs");
  add_common(gm, gm_o);
  std::string gm_out = "";
  gm->add_option("--variant", gm_variant, "rip | rvip | rlnp");
  gm->add_option("--plays", gm_plays, "random prover plays");
  gm->add_option("--seed", gm_seed, "seed");
  gm->add_option("--transcript-out", gm_transcript, "write one transcript json");
  gm->add_option("--out", gm_out, "append a minimax csv row");

  CommonOpts rs_o;
  std::string rs_sampler = "rlnp";
  uint64_t rs_trials = 10000, rs_seed = 1;
  int rs_jobs = 1;
  std::string rs_probe = "";
  auto* rs = app.add_subcommand("restrict", "restriction sampling with survival statistics");
  add_common(rs, rs_o);
  rs->add_option("--sampler", rs_sampler, "rlnp | drlnp | param");
  rs->add_option("--trials", rs_trials, "monte carlo trials");
  rs->add_option("--seed", rs_seed, "seed");
  rs->add_option("--jobs", rs_jobs, "worker pool size");
  rs->add_option("--probe", rs_probe, "survival probe: r:<i> | edges:<count> | weight:<i>,<j>");

  CommonOpts orc_o;
  std::string orc_op = "unsat";
  auto* orc = app.add_subcommand("oracle", "brute-force ground truth");
  add_common(orc, orc_o);
  orc->add_option("--op", orc_op, "unsat | minweight | mintree");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    CnfInstance inst = generate(build_spec(gen_o));
    bool dimacs = gen_format == "dimacs" || (gen_format == "auto" && inst.clause_only());
    write_or_print(gen_out, dimacs ? to_dimacs(inst) : to_jsonl(inst));
    return 0;
  }
  if (chk->parsed()) {
    CnfInstance inst = generate(build_spec(chk_o));
    std::ifstream in(chk_proof, std::ios::binary);
    if (!in) {
      std::cerr << "cannot open proof file\n";
      return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    Refutation proof = proof_from_jsonl(ss.str(), inst.atlas);
    CheckReport rep = check(inst, proof);
    std::cout << rep.str() << "\n";
    return rep.valid ? 0 : 1;
  }
  if (ref->parsed()) {
    auto e = emit_for(ref_o.family, ref_o.d, ref_o.n, ref_o.k);
    if (!ref_out.empty()) write_or_print(ref_out, proof_to_jsonl(e.proof, e.instance.atlas));
    CheckReport rep = check(e.instance, e.proof);
    std::cout << constructions::SizeReport::csv_header() << "\n" << e.report.csv_row() << "\n";
    std::cout << rep.str() << "\n";
    return rep.valid ? 0 : 1;
  }
  if (sw->parsed()) {
    auto dots = sw_range.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--n-range", "expected a..b");
    int lo = std::stoi(sw_range.substr(0, dots));
    int hi = std::stoi(sw_range.substr(dots + 2));
    std::ostringstream csv;
    csv << constructions::SizeReport::csv_header() << "\n";
    std::vector<std::pair<int, size_t>> sweep;
    for (int n = lo; n <= hi; ++n) {
      auto e = emit_for(sw_o.family, sw_o.d, n, sw_o.k);
      csv << e.report.csv_row() << "\n";
      sweep.push_back({n, e.report.size});
    }
    auto fit = constructions::fit_size(sweep);
    csv << "# fitted exponent " << fit.exponent << "\n";
    if (!sw_out.empty()) write_or_print(sw_out, csv.str());
    std::cout << csv.str();
    return 0;
  }
  if (gm->parsed()) {
    if (gm_variant == "rlnp") {
      int contradictions = 0, ok = 0;
      for (int play = 0; play < std::max(1, gm_plays); ++play) {
        auto t = games::rlnp_width_game(gm_o.n, games::random_width_prover, gm_seed + static_cast<uint64_t>(play),
                                        4000);
        if (t.contradiction) {
          ++contradictions;
          if (2 * t.busy_at_contradiction >= gm_o.n) ++ok;
        }
      }
      std::cout << "plays=" << std::max(1, gm_plays) << " contradictions=" << contradictions
                << " busy-bound-held=" << ok << "\n";
      return contradictions == ok ? 0 : 1;
    }
    games::Variant v = gm_variant == "rvip" ? games::Variant::RVIP : games::Variant::RIP;
    auto mm = games::min_tree_size_vs_adversary(v, gm_o.n, gm_o.d, gm_o.k);
    std::cout << "minimax total=" << mm.total << " internal=" << mm.internal
              << " leaves=" << mm.leaves << " states=" << mm.states << "\n";
    long long bound = v == games::Variant::RIP ? games::fibonacci(gm_o.n - gm_o.d - 2)
                                               : games::rvip_bound(gm_o.n, gm_o.k);
    std::cout << (v == games::Variant::RIP ? "fibonacci bound=" : "dp bound=") << bound << "\n";
    if (!gm_out.empty()) {
      std::ofstream csv(gm_out, std::ios::app);
      csv << gm_variant << "," << gm_o.d << "," << gm_o.n << "," << gm_o.k << "," << mm.total
          << "," << mm.internal << "," << mm.leaves << "," << bound << "\n";
    }
    if (gm_plays > 0) {
      FamilySpec spec;
      spec.family = v == games::Variant::RVIP ? Family::DRVIP : Family::DRIP;
      spec.n = gm_o.n;
      spec.d = std::max(1, gm_o.d);
      spec.k = gm_o.k;
      CnfInstance inst = generate(spec);
      auto stats = games::random_plays(v, inst, gm_plays, gm_seed);
      std::cout << "plays=" << stats.plays << " caught-early=" << stats.caught_before_terminal
                << " terminal=" << stats.terminal_reached << "\n";
      if (!gm_transcript.empty())
        write_or_print(gm_transcript, games::transcript_json(v, inst, gm_seed, 2000));
      return stats.caught_before_terminal == 0 ? 0 : 1;
    }
    return 0;
  }
  if (rs->parsed()) {
    restrictions::SamplerSpec spec;
    spec.n = rs_o.n;
    spec.d = rs_o.d;
    spec.k = rs_o.k;
    if (rs_sampler == "rlnp") {
      spec.kind = restrictions::SamplerKind::LiveChaotic;
    } else if (rs_sampler == "drlnp") {
      spec.kind = restrictions::SamplerKind::LiveChaoticGraph;
      spec.graph = build_graph(rs_o);
    } else if (rs_sampler == "param") {
      spec.kind = restrictions::SamplerKind::Weighted;
    } else {
      throw CLI::ValidationError("--sampler", "expected rlnp | drlnp | param");
    }
    std::cout << "seed,live,inconsistent\n";
    uint64_t shown = std::min<uint64_t>(rs_trials, 16);
    for (uint64_t t = 0; t < shown; ++t) {
      restrictions::RestrictionSample smp =
          rs_sampler == "rlnp"    ? restrictions::sample_rlnp(spec.n, rs_seed + t)
          : rs_sampler == "drlnp" ? restrictions::sample_drlnp(spec.d, spec.n, spec.graph, rs_seed + t)
                                  : restrictions::sample_param(spec.n, spec.k, rs_seed + t);
      std::cout << rs_seed + t << "," << smp.live_count() << "," << (smp.inconsistent ? 1 : 0)
                << "\n";
    }
    if (spec.kind != restrictions::SamplerKind::Weighted) {
      double frac = spec.kind == restrictions::SamplerKind::LiveChaotic
                        ? 0.25
                        : 1.0 / std::pow(2.0, spec.d + 1);
      auto rep = restrictions::mc_event_rate(
          spec, rs_trials, rs_seed, 1.0,
          [&](const restrictions::RestrictionSample& smp) {
            return smp.inconsistent ||
                   static_cast<double>(smp.live_count()) <= frac * static_cast<double>(spec.n);
          },
          rs_jobs);
      std::cout << "event [inconsistent or small live part]: " << rep.str() << "\n";
    }
    if (!rs_probe.empty()) {
      DnfLine clause;
      std::optional<double> bound;
      if (rs_probe.rfind("r:", 0) == 0) {
        clause = clause_of({lit(atom(Kind::R, 1, std::stoi(rs_probe.substr(2))))});
      } else if (rs_probe.rfind("edges:", 0) == 0) {
        int count = std::stoi(rs_probe.substr(6));
        std::vector<Literal> lits;
        for (int e = 0; e < count; ++e)
          lits.push_back(lit(atom(Kind::L, 2 * e + 1, 2 * e + 2)));
        clause = clause_of(std::move(lits));
      } else if (rs_probe.rfind("weight:", 0) == 0) {
        auto comma = rs_probe.find(',', 7);
        if (comma == std::string::npos)
          throw CLI::ValidationError("--probe", "weight probe needs two coordinates");
        int i = std::stoi(rs_probe.substr(7, comma - 7));
        int j = std::stoi(rs_probe.substr(comma + 1));
        clause = parameterized_axiom({atom(Kind::R, 1, i), atom(Kind::R, 1, j)});
        bound = 1.0 / static_cast<double>(spec.n);
      } else {
        throw CLI::ValidationError("--probe", "expected r:<i> | edges:<count> | weight:<i>,<j>");
      }
      auto rep = restrictions::mc_kill_rate(clause, spec, rs_trials, rs_seed, bound, rs_jobs);
      std::cout << "probe survival: " << rep.str() << "\n";
    }
    return 0;
  }
  if (orc->parsed()) {
    FamilySpec spec = build_spec(orc_o);
    std::string key = std::string(orc_op) + " " + spec.str();
    if (auto hit = cache_lookup(key)) {
      std::cout << *hit << " [cached]\n";
      return 0;
    }
    CnfInstance inst = generate(spec);
    std::string out;
    if (orc_op == "unsat") {
      out = oracle::unsat(inst) ? "unsat" : "sat";
    } else if (orc_op == "minweight") {
      auto w = oracle::min_weight_sat(inst);
      out = w ? "min-weight " + std::to_string(*w) : "min-weight infinity";
    } else if (orc_op == "mintree") {
      auto t = oracle::min_tree_refutation_size(inst, std::max(1, orc_o.d));
      out = "min-tree internal=" + std::to_string(t.internal) +
            " leaves=" + std::to_string(t.leaves);
    } else {
      throw CLI::ValidationError("--op", "expected unsat | minweight | mintree");
    }
    cache_store(key, out);
    std::cout << out << "\n";
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const CLI::Error&) {
    // CLI11_PARSE already printed; unreachable in practice
    return 2;
  } catch (const oracle::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
