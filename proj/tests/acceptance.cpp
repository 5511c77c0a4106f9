// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "prhs/report.hpp"

using namespace prhs;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

std::vector<Vector> units(std::size_t n, std::size_t from, std::size_t to) {
  std::vector<Vector> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(unit_vector(n, i));
  return v;
}

std::string failed_claims(const VerificationReport& r) {
  std::string s;
  for (const auto& c : r.claims)
    if (!c.verdict) s += (s.empty() ? "" : "; ") + c.claim;
  return s;
}

Outcome example_gamma44() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = verify_example("gamma44", 42);
  const double secs = seconds_since(t0);
  o.require(r.overall(), "failed claims: " + failed_claims(r));
  o.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");

  const auto ex = gamma44();
  const auto& gens = ex.group.generators();
  for (const auto& g : gens) o.require((g.nilpart() * g.nilpart()).is_zero(), "A_i^2 != 0");
  const auto g3 = commutator(gens[0], gens[1]);
  const auto l3 = log_affine(g3);
  const WittFrame frame{2, Matrix::identity(8), ex.signature_w};
  o.require(extract_blocks(l3.nilpart, frame).c == (Matrix{{0, -4}, {4, 0}}), "C_3 mismatch");
  o.require(l3.translation == ex.expected_u3, "u_3 mismatch");
  o.require(commute(g3, gens[0]) && commute(g3, gens[1]), "gamma_3 not central");
  const auto hol = holonomy_abelian(ex.group);
  o.require(!hol.abelian && !hol.linear_parts_commute && !hol.span_isotropic, "holonomy criteria");
  o.require(invariant_spaces(ex.group).u_0 == Subspace::span(8, units(8, 0, 2)), "U_0 != span(e1,e2)");
  const auto c = centralizer_algebra(ex.group);
  for (const auto& f : ex.commuting_family) o.require(c.contains(f), "family not in centralizer");
  o.require(ex.commuting_family.size() == 8, "family is not 8-parameter");
  o.require(orbit_dimension(c, zero_vector(8)).orbit_dim == 8, "orbit at 0 not 8-dimensional");
  o.require(g3.apply(unit_vector(8, 6)) == unit_vector(8, 6), "gamma_3 does not fix e7");
  const auto p = properness_certificate(ex.group, c, std::nullopt, 42);
  o.require(p.verdict == ProperVerdict::proper_on_open_orbits, "properness verdict");
  if (o.ok) o.note = std::to_string(r.claims.size()) + " claims, " + std::to_string(secs) + " s";
  return o;
}

Outcome example_gamma77() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = verify_example("gamma77", 42, 5);
  const double secs = seconds_since(t0);
  o.require(r.overall(), "failed claims: " + failed_claims(r));
  o.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");

  const auto ex = gamma77();
  const auto& gens = ex.group.generators();
  const auto l3 = log_affine(commutator(gens[0], gens[1]));
  const WittFrame frame{5, Matrix::identity(14), ex.signature_w};
  const Matrix c3 = extract_blocks(l3.nilpart, frame).c;
  o.require(c3(0, 1) == -4 && c3(1, 0) == 4, "C_3 entries");
  const Vector u3_head(l3.translation.begin(), l3.translation.begin() + 5);
  o.require(u3_head == int_vector({0, 0, 0, 0, 2}), "u_3 mismatch");
  o.require(invariant_spaces(ex.group).u_0.dim() == 5, "dim U_0 != 5");
  const auto t = transitivity_certificate(14, ex.commuting_family, 42);
  o.require(t.closed_under_bracket, "family not bracket-closed");
  o.require(t.linear_parts_nilpotent, "linear parts not nilpotent");
  o.require(t.nilpotency_class == std::optional<std::size_t>(3), "nilpotency class != 3");
  o.require(t.evaluation_surjective && t.probes.size() == 14 + 6, "evaluation not surjective at all probes");
  const auto fr = is_free_on_space(ex.presentation, 5);
  o.require(fr.free && fr.elements_with_fixed_points == 0, "fixed point found in exponent box");
  const auto p = properness_certificate(ex.group, centralizer_algebra(ex.group), t, 42);
  o.require(p.verdict == ProperVerdict::proper_on_space, "properness verdict");
  if (o.ok) o.note = std::to_string(r.claims.size()) + " claims, " + std::to_string(secs) + " s";
  return o;
}

Outcome dimension_bound_search() {
  Outcome o;
  const auto t0 = Clock::now();
  std::uint64_t cells = 0, admissible = 0;
  for (std::size_t n = 4; n <= 7; ++n)
    for (const auto& cell : falsification_all_splits(n, 100000, 42)) {
      ++cells;
      admissible += cell.admissible_pairs;
      o.require(cell.trials_run == 100000, "short cell");
      o.require(cell.nonabelian_pairs == 0,
                "non-abelian pair at n=" + std::to_string(n) + " k=" + std::to_string(cell.k));
    }
  auto c = make_search_config(8, 2, 100000, 42);
  c.include_gamma44_pair = true;
  const auto injected = falsification_run(c);
  o.require(injected.gamma44_pair_admissible && injected.gamma44_pair_nonabelian, "injected pair rejected or abelian");
  for (const auto& w : injected.witnesses) o.require(w.reverified, "witness fails exact re-check");
  const double secs = seconds_since(t0);
  o.require(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  if (o.ok)
    o.note = std::to_string(cells) + " cells, " + std::to_string(admissible) + " admissible pairs, 0 non-abelian; " +
             std::to_string(secs) + " s";
  return o;
}

// Abelian groups in frame form: B = 0, random skew C, translations with no U_0*
// component so that A v = 0.
IsoGroup skew_c_group(Rng& rng, std::size_t k, std::size_t m, std::size_t gens) {
  const Matrix gw = detail::signature_w().block(0, 0, m, m);
  const std::size_t n = 2 * k + m;
  std::vector<AffineIsometry> list;
  for (std::size_t g = 0; g < gens; ++g) {
    Matrix cc(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        cc(i, j) = Scalar(static_cast<long>(rng.uniform(-3, 3)));
        cc(j, i) = -cc(i, j);
      }
    Vector v = zero_vector(n);
    for (std::size_t i = 0; i < k + m; ++i) v[i] = Scalar(static_cast<long>(rng.uniform(-2, 2)));
    list.push_back({Matrix::identity(n) + detail::block_log(k, Matrix(m, k), cc, gw), v});
  }
  return IsoGroup(ScalarProduct(detail::witt_gram(k, gw)), list);
}

Outcome holonomy_equivalence() {
  Outcome o;
  Rng rng(42);
  std::size_t groups = 0, abelian = 0;
  auto consider = [&](const IsoGroup& g, std::optional<bool> expect_abelian) {
    ++groups;
    try {
      const auto v = holonomy_abelian(g);
      abelian += v.abelian;
      if (expect_abelian) o.require(v.abelian == *expect_abelian, "unexpected abelian verdict");
    } catch (const ConsistencyError& e) {
      o.require(false, e.what());
    }
  };
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng.uniform(0, 3);
    Matrix gram = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) gram(i, i) = rng.uniform(0, 1) ? 1 : -1;
    std::vector<AffineIsometry> gens;
    for (std::size_t g = 0, count = 1 + rng.uniform(0, 2); g < count; ++g) {
      Vector v(n);
      for (auto& x : v) x = Scalar(static_cast<long>(rng.uniform(-3, 3)));
      gens.push_back(AffineIsometry::translation_by(v));
    }
    consider(IsoGroup(ScalarProduct(gram), gens), true);
  }
  for (int t = 0; t < 40; ++t) consider(skew_c_group(rng, 2 + rng.uniform(0, 2), rng.uniform(0, 4), 2), true);
  for (std::size_t n = 6; n <= 8; ++n) {
    const auto c = make_search_config(n, 2, 5000, 42 + n, 2);
    for (const auto& p : falsification_run(c).admissible_sample) consider(promote_pair(c, p), std::nullopt);
  }
  for (std::size_t s = 0; s < 4; ++s) {
    const auto [c, p] = structured_nonabelian_pair(8 + s, 2, rng);
    consider(promote_pair(c, p), false);
  }
  for (const auto& name : example_names()) consider(build_example(name).group, false);
  o.require(groups >= 100, "only " + std::to_string(groups) + " groups");
  if (o.ok) o.note = std::to_string(groups) + " groups, " + std::to_string(abelian) + " abelian, criteria agree";
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  std::size_t groups = 0;
  auto check = [&](const IsoGroup& raw, const WittFrame* native, const std::string& label) {
    ++groups;
    const IsoGroup g = raw.with_hypothesis(Hypothesis::asserted);
    const auto li = lemma_identities(g);
    o.require(li.commutator_closed_form, label + ": commutator closed form");
    o.require(li.product_kills_translation, label + ": A1 A2 v1 != 0");
    o.require(li.triple_products_vanish, label + ": triple product");
    o.require(li.delta_perp_gamma, label + ": U_Delta not perp U_Gamma");
    const auto s = invariant_spaces(g);
    o.require(chain_stabilization_check(g, s), label + ": chain containments");
    const auto f = native ? *native : witt_frame(s.u_0, g.form());
    for (const auto& l : g.generator_logs()) {
      try {
        o.require(from_frame(assemble_blocks(extract_blocks(l.nilpart, f), f), f) == l.nilpart,
                  label + ": block roundtrip");
      } catch (const StructuralError& e) {
        o.require(false, label + ": " + e.what());
      }
    }
  };
  for (const auto& name : example_names()) {
    const auto ex = build_example(name);
    check(ex.group, nullptr, std::string(name));
  }
  for (std::size_t n = 6; n <= 8; ++n)
    for (std::size_t k = 1; 2 * k <= n; ++k) {
      const auto c = make_search_config(n, k, 20000, 42, 2);
      const auto frame = search_frame(c);
      for (const auto& p : falsification_run(c).admissible_sample)
        check(promote_pair(c, p), &frame, "n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  auto c = make_search_config(8, 2, 1, 42);
  c.include_gamma44_pair = true;
  const auto frame = search_frame(c);
  check(promote_pair(c, gamma44_pair()), &frame, "gamma44 pair");
  if (o.ok) o.note = std::to_string(groups) + " groups";
  return o;
}

Outcome lie_suite() {
  Outcome o;
  const auto det = lie_report(ThreeForm::determinant(), LieOptions{1, 1}, "determinant");
  o.require(det.overall(), "determinant form: " + failed_claims(det));
  const auto g = build_split_algebra(ThreeForm::determinant(), 1, 1);
  const auto d = split_decomposition(g);
  o.require(d.form == ThreeForm::determinant(), "determinant form not recovered");
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 1 + rng.uniform(0, 3), z = rng.uniform(0, 2);
    ThreeForm f(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t l = j + 1; l < m; ++l) f.set(i, j, l, Scalar(static_cast<long>(rng.uniform(-3, 3))));
    const auto r = lie_report(f, LieOptions{z, z / 2}, "random form " + std::to_string(t));
    o.require(r.overall(), r.target + ": " + failed_claims(r));
  }
  if (o.ok) o.note = "determinant form and 20 random forms";
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + PRHS_CLI + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("prhs_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path form = dir / "det.json";
  std::ofstream(form) << "{\"m\": 3, \"values\": [{\"ijk\": [0, 1, 2], \"value\": \"1\"}]}\n";
  const std::vector<std::string> commands{
      "verify-example gamma44 --seed 42",
      "verify-example gamma77 --seed 42",
      "centralizer --example gamma77 --family --seed 42",
      "search --dim 7 --trials 20000 --seed 42 --shards 2",
      "search --dim 8 --k 2 --trials 20000 --seed 42 --include-gamma44-pair",
      "lie " + form.string() + " --z0 1",
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto a = dir / ("a" + std::to_string(i) + ".json"), b = dir / ("b" + std::to_string(i) + ".json");
    const int ea = run_cli(commands[i] + " --report " + a.string());
    const int eb = run_cli(commands[i] + " --report " + b.string());
    o.require(ea == eb && ea != 2, commands[i] + ": exit codes " + std::to_string(ea) + "/" + std::to_string(eb));
    o.require(fs::exists(a) && slurp(a) == slurp(b), commands[i] + ": reports differ");
  }
  fs::remove_all(dir);
  if (o.ok) o.note = std::to_string(commands.size()) + " commands run twice, byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 verify-example gamma44", example_gamma44},
      {"2 verify-example gamma77", example_gamma77},
      {"3 dimension bound search", dimension_bound_search},
      {"4 abelian holonomy tri-equivalence", holonomy_equivalence},
      {"5 lemma and block identities", lemma_suite},
      {"6 flat metric Lie algebra suite", lie_suite},
      {"7 deterministic reports", determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << name << "  (" << o.note << ")" << std::endl;
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
