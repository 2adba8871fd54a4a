// Command-line front end: load ring/space files, run rank / classification /
// census / property-check commands, emit JSON or CSV reports.
//
// Exit codes are the machine contract:
//   0  success, property verified
//   2  refutation found (witness in the report)
//   1  usage or runtime error

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "skewrank/random.hpp"
#include "skewrank/serialize.hpp"

namespace {

using namespace skewrank;

RingPtr ring_from_flag(const std::string& s) {
  if (s == "quaternion_q") return DivisionRingSpec::quaternions();
  if (s.rfind("file:", 0) == 0) return ring_from_json(load_json_file(s.substr(5)));
  if (s.rfind("gf:", 0) == 0) {
    std::string rest = s.substr(3);
    std::size_t colon = rest.find(':');
    try {
      std::int64_t p = std::stoll(colon == std::string::npos ? rest : rest.substr(0, colon));
      int k = colon == std::string::npos ? 1 : std::stoi(rest.substr(colon + 1));
      return DivisionRingSpec::gf(p, k);
    } catch (const std::logic_error&) {
      // fall through to the BadSpec below
    }
  }
  throw BadSpec("unrecognized ring '" + s + "' (expected gf:p[:k], quaternion_q, or file:<path>)");
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct CensusFlags {
  std::string ring_spec;
  int n = 0, p = 0, r = 0;
  std::uint64_t cap = 100000000ULL;
  int workers = 1;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  bool timing = false;
};

void add_census_flags(CLI::App* cmd, CensusFlags* f, bool randomized_mode) {
  cmd->add_option("--ring", f->ring_spec, "ring spec: gf:p[:k], quaternion_q, or file:<path>")
      ->required();
  cmd->add_option("--n", f->n, "number of rows")->required();
  cmd->add_option("--p", f->p, "number of columns")->required();
  cmd->add_option("--r", f->r, "rank bound")->required();
  cmd->add_option("--cap", f->cap, "refuse exhaustive runs past this many candidates");
  cmd->add_option("--workers", f->workers, "worker threads for the candidate scan");
  if (randomized_mode) {
    cmd->add_option("--trials", f->trials, "sample this many random spaces instead of enumerating");
    cmd->add_option("--seed", f->seed, "seed for randomized mode (generated and recorded if absent)");
  }
  cmd->add_option("--format", f->format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--timing", f->timing, "include wall_ms in the report payload");
}

int emit_census_report(const CensusReport& rep, const CensusFlags& flags, double wall_ms) {
  std::cerr << "# " << rep.kind << " ring=" << ring_brief(rep.ring) << " n=" << rep.n
            << " p=" << rep.p << " r=" << rep.r << " wall_ms=" << static_cast<long long>(wall_ms)
            << " workers=" << flags.workers << "\n";
  if (flags.format == "csv") {
    std::string csv = census_report_to_csv(rep);
    if (flags.timing) {
      // append one column to both lines
      std::size_t nl = csv.find('\n');
      csv = csv.substr(0, nl) + ",wall_ms" + csv.substr(nl, csv.size() - nl - 1) + "," +
            std::to_string(static_cast<long long>(wall_ms)) + "\n";
    }
    std::cout << csv;
  } else {
    Json j = census_report_to_json(rep);
    if (flags.timing) j["wall_ms"] = static_cast<long long>(wall_ms);
    std::cout << dump_json(j);
  }
  return rep.violations > 0 ? 2 : 0;
}

int run_census(const std::string& kind, const CensusFlags& flags) {
  RingPtr ring = ring_from_flag(flags.ring_spec);
  CensusOptions opt;
  opt.cap = flags.cap;
  opt.workers = flags.workers;
  opt.trials = flags.trials;
  opt.seed = flags.seed;
  auto t0 = std::chrono::steady_clock::now();
  CensusReport rep;
  if (kind == "bound") {
    rep = verify_bound(ring, flags.n, flags.p, flags.r, opt);
  } else if (kind == "extremal") {
    rep = classify_extremal(ring, flags.n, flags.p, flags.r, opt);
  } else {
    rep = corollary_census(ring, flags.n, flags.p, flags.r, opt);
  }
  auto t1 = std::chrono::steady_clock::now();
  double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return emit_census_report(rep, flags, wall_ms);
}

int run_rank(const std::string& space_path, std::uint64_t cap) {
  AffineMatrixSpace s = space_from_json(load_json_file(space_path));
  Json j;
  j["ring"] = ring_to_json(s.ring());
  j["n"] = s.n();
  j["p"] = s.p();
  j["dim"] = s.dim_f();
  j["linear"] = s.linear();
  if (s.ring()->finite()) {
    std::uint64_t points = s.point_count();
    if (points > cap)
      throw CapExceeded("space has " + std::to_string(points) + " members, past the cap " +
                        std::to_string(cap));
    std::map<int, std::uint64_t> histogram;
    Json ranks = Json::array();
    bool list = points <= 4096;
    for (std::uint64_t t = 0; t < points; ++t) {
      int rk = rank(s.point(t));
      ++histogram[rk];
      if (list) ranks.push_back(rk);
    }
    j["members"] = points;
    j["ranks"] = list ? ranks : Json();
    Json h;
    for (const auto& [rk, count] : histogram) h[std::to_string(rk)] = count;
    j["rank_histogram"] = std::move(h);
  } else {
    j["members"] = Json();
    j["ranks"] = Json();
    j["rank_histogram"] = Json();
  }
  MaxRankResult mr = max_rank(s);
  j["max_rank"] = mr.rank;
  j["verdict"] = mr.verdict == Verdict::Proven ? "proven" : "sampled";
  j["witness"] = matrix_to_json(mr.witness);
  std::cout << dump_json(j);
  return 0;
}

int run_classify(const std::string& space_path, int r) {
  AffineMatrixSpace s = space_from_json(load_json_file(space_path));
  ClassificationResult res = classify(s, r);
  if (!verify_classification(s, r, res))
    throw ContradictionWitness("classification witness failed re-verification");
  std::cout << dump_json(classification_to_json(res));
  return res.tag == Tag::NotBoundedRank ? 2 : 0;
}

int run_lemma_check(const std::string& which, const std::string& ring_spec, std::uint64_t trials,
                    std::optional<std::uint64_t> seed_opt, int n, int p) {
  if (which != "extraction")
    throw BadSpec("unknown check '" + which + "' (available: extraction)");
  RingPtr ring = ring_from_flag(ring_spec);
  std::uint64_t seed = seed_opt ? *seed_opt : fresh_seed();
  Rng rng(seed);
  int rmax = std::min(n, p);
  std::uint64_t cases = 0, counterexamples = 0;
  std::optional<Matrix> witness;
  int witness_r = -1;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Matrix m = random_matrix(rng, ring, n, p);
    for (int r = 0; r <= rmax; ++r) {
      ++cases;
      if (!extraction_predicate(m, r)) {
        ++counterexamples;
        if (!witness) {
          witness = m;
          witness_r = r;
        }
      }
    }
  }
  Json j;
  j["check"] = "extraction";
  j["ring"] = ring_to_json(ring);
  j["n"] = n;
  j["p"] = p;
  j["trials"] = trials;
  j["seed"] = seed;
  j["cases"] = cases;
  j["counterexamples"] = counterexamples;
  j["witness"] = witness ? matrix_to_json(*witness) : Json();
  j["witness_r"] = witness ? Json(witness_r) : Json();
  std::cout << dump_json(j);
  return counterexamples > 0 ? 2 : 0;
}

int run_oracle_check(const std::string& ring_spec, std::uint64_t trials,
                     std::optional<std::uint64_t> seed_opt, int n, int p) {
  RingPtr ring = ring_from_flag(ring_spec);
  std::uint64_t seed = seed_opt ? *seed_opt : fresh_seed();
  Rng rng(seed);
  int d = ring->dim();
  std::uint64_t counterexamples = 0;
  std::optional<Matrix> witness;
  for (std::uint64_t t = 0; t < trials; ++t) {
    int rows = static_cast<int>(rng.in_range(1, n));
    int cols = static_cast<int>(rng.in_range(1, p));
    Matrix m = random_matrix(rng, ring, rows, cols);
    if (rank(regular_rep(m)) != d * rank(m)) {
      ++counterexamples;
      if (!witness) witness = m;
    }
  }
  Json j;
  j["check"] = "regular_rep_rank";
  j["ring"] = ring_to_json(ring);
  j["n"] = n;
  j["p"] = p;
  j["trials"] = trials;
  j["seed"] = seed;
  j["counterexamples"] = counterexamples;
  j["witness"] = witness ? matrix_to_json(*witness) : Json();
  std::cout << dump_json(j);
  return counterexamples > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rank, classification, and censuses for matrix spaces over division rings"};
  app.require_subcommand(1);

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "per-member ranks and maximum rank of a space");
  std::string rank_space;
  std::uint64_t rank_cap = 100000000ULL;
  rank_cmd->add_option("--space", rank_space, "space file (JSON)")->required();
  rank_cmd->add_option("--cap", rank_cap, "refuse member listings past this many points");

  // classify
  auto* classify_cmd =
      app.add_subcommand("classify", "classify a space against a rank bound, with witnesses");
  std::string classify_space;
  int classify_r = 0;
  classify_cmd->add_option("--space", classify_space, "space file (JSON)")->required();
  classify_cmd->add_option("--r", classify_r, "rank bound")->required();

  // censuses
  CensusFlags bound_flags, extremal_flags, corollary_flags;
  auto* bound_cmd = app.add_subcommand(
      "census-bound", "check that every space one dimension above the bound exceeds the rank");
  add_census_flags(bound_cmd, &bound_flags, /*randomized_mode=*/true);
  auto* extremal_cmd =
      app.add_subcommand("census-extremal", "classify every rank-bounded space at the bound");
  add_census_flags(extremal_cmd, &extremal_flags, /*randomized_mode=*/false);
  auto* corollary_cmd = app.add_subcommand(
      "census-corollary", "linear-subspace census: extremal classification plus the size bound");
  add_census_flags(corollary_cmd, &corollary_flags, /*randomized_mode=*/false);

  // lemma-check
  auto* lemma_cmd = app.add_subcommand("lemma-check", "property-check a lemma on random inputs");
  std::string lemma_which, lemma_ring;
  std::uint64_t lemma_trials = 10000;
  std::optional<std::uint64_t> lemma_seed;
  int lemma_n = 3, lemma_p = 3;
  lemma_cmd->add_option("check", lemma_which, "which check to run (extraction)")->required();
  lemma_cmd->add_option("--ring", lemma_ring, "ring spec")->required();
  lemma_cmd->add_option("--trials", lemma_trials, "number of random matrices");
  lemma_cmd->add_option("--seed", lemma_seed, "seed (generated and recorded if absent)");
  lemma_cmd->add_option("--n", lemma_n, "rows of the random matrices");
  lemma_cmd->add_option("--p", lemma_p, "columns of the random matrices");

  // oracle-check
  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "cross-validate elimination rank against the base-field representation");
  std::string oracle_ring;
  std::uint64_t oracle_trials = 10000;
  std::optional<std::uint64_t> oracle_seed;
  int oracle_n = 3, oracle_p = 3;
  oracle_cmd->add_option("--ring", oracle_ring, "ring spec")->required();
  oracle_cmd->add_option("--trials", oracle_trials, "number of random matrices");
  oracle_cmd->add_option("--seed", oracle_seed, "seed (generated and recorded if absent)");
  oracle_cmd->add_option("--n", oracle_n, "maximum rows");
  oracle_cmd->add_option("--p", oracle_p, "maximum columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (rank_cmd->parsed()) return run_rank(rank_space, rank_cap);
    if (classify_cmd->parsed()) return run_classify(classify_space, classify_r);
    if (bound_cmd->parsed()) return run_census("bound", bound_flags);
    if (extremal_cmd->parsed()) return run_census("extremal", extremal_flags);
    if (corollary_cmd->parsed()) return run_census("corollary", corollary_flags);
    if (lemma_cmd->parsed())
      return run_lemma_check(lemma_which, lemma_ring, lemma_trials, lemma_seed, lemma_n, lemma_p);
    if (oracle_cmd->parsed())
      return run_oracle_check(oracle_ring, oracle_trials, oracle_seed, oracle_n, oracle_p);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
