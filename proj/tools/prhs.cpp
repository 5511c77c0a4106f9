// prhs command-line tool. Text goes to stdout, JSON to --report PATH.
// Exit codes: 0 all claims pass, 1 some claim fails, 2 input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "prhs/report.hpp"

namespace {

using namespace prhs;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("PRHS_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw InputError(std::string("PRHS_SEED is not an unsigned integer: ") + env);
    }
  }
  return flag;
}

int emit(const VerificationReport& r, const std::string& report_path) {
  std::cout << r.to_text();
  if (!report_path.empty()) write_file(report_path, r.to_json().dump(2) + "\n");
  return r.overall() ? 0 : 1;
}

struct Source {
  std::string file;
  std::string example;

  bool given() const { return !file.empty() || !example.empty(); }
};

GroupFile load_group(const Source& s) {
  if (!s.example.empty()) {
    auto ex = build_example(s.example);
    return GroupFile{ex.group, true};
  }
  return group_from_json(read_json_file(s.file));
}

std::string target_name(const Source& s) { return s.example.empty() ? s.file : s.example; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of flat pseudo-Riemannian homogeneous space data"};
  app.require_subcommand(1);
  std::string report;
  std::uint64_t seed = 42;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--report", report, "write the JSON report to this path");
    sub->add_option("--seed", seed, "seed for probe points and sampling (PRHS_SEED overrides)");
  };

  auto* verify = app.add_subcommand("verify-example", "run the full claim list for gamma44 or gamma77");
  std::string example_name;
  long verify_box = 5;
  verify->add_option("name", example_name, "gamma44 or gamma77")->required();
  verify->add_option("--free-box", verify_box, "Heisenberg exponent box for freeness");
  common(verify);

  auto* check = app.add_subcommand("check", "check a group description file");
  std::string check_file;
  CheckOptions check_opt;
  long check_box = -1;
  check->add_option("file", check_file, "group JSON")->required();
  check->add_flag("--centralizer", check_opt.centralizer, "run the centralizer suite");
  check->add_option("--free-box", check_box, "exponent box (Heisenberg) or word-ball radius for freeness");
  check->add_flag("--assume-open-orbit", check_opt.assume_open_orbit,
                  "assert the open-orbit hypothesis instead of certifying it");
  common(check);

  auto* witt = app.add_subcommand("witt", "Witt frame for U_0 of a group, or for {\"gram\", \"u0\"}");
  Source witt_src;
  witt->add_option("file", witt_src.file, "group JSON or {\"gram\", \"u0\"} JSON");
  witt->add_option("--example", witt_src.example, "use gamma44 or gamma77");
  common(witt);

  auto* cent = app.add_subcommand("centralizer", "centralizer algebra, orbit, transitivity and properness");
  Source cent_src;
  bool use_family = false;
  cent->add_option("file", cent_src.file, "group JSON");
  cent->add_option("--example", cent_src.example, "use gamma44 or gamma77");
  cent->add_flag("--family", use_family, "use the example's displayed family as transitivity candidate");
  common(cent);

  auto* search = app.add_subcommand("search", "randomized falsification of the dimension bound");
  std::size_t dim = 0, dim_max = 0, samples = 1, shards = 1;
  std::optional<std::size_t> k;
  std::uint64_t trials = 100000;
  std::int64_t entry_bound = 3;
  std::string emit_dir;
  bool gamma44_pair = false, frontier = false;
  search->add_option("--dim", dim, "ambient dimension n")->required();
  search->add_option("--k", k, "dim U_0 (all splits when omitted)");
  search->add_option("--trials", trials, "trials per cell");
  search->add_option("--entry-bound", entry_bound, "entries drawn from [-B, B]");
  search->add_option("--emit-witness", emit_dir, "write each witness as a group JSON into this directory");
  search->add_option("--shards", shards, "split trials into shards with seeds seed xor shard");
  search->add_flag("--include-gamma44-pair", gamma44_pair, "inject the gamma44 pair as trial 0 (n=8, k=2)");
  search->add_flag("--frontier", frontier, "transitivity evidence table for n in [dim, dim-max]");
  search->add_option("--dim-max", dim_max, "upper end of the frontier range");
  search->add_option("--samples", samples, "structured random groups per (n, k) in the frontier table");
  common(search);

  auto* lie = app.add_subcommand("lie", "metric two-step nilpotent algebra from an alternating 3-form");
  std::string form_file;
  LieOptions lie_opt;
  lie->add_option("file", form_file, "3-form JSON")->required();
  lie->add_option("--z0", lie_opt.dim_z0, "dimension of z0");
  lie->add_option("--z0-positive", lie_opt.z0_positive, "number of positive directions in z0");
  common(lie);

  auto* exporter = app.add_subcommand("export-example", "write gamma44 or gamma77 as a group JSON");
  std::string export_name, export_out;
  exporter->add_option("name", export_name, "gamma44 or gamma77")->required();
  exporter->add_option("--out", export_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    seed = effective_seed(seed);
    if (*verify) return emit(verify_example(example_name, seed, verify_box), report);

    if (*check) {
      check_opt.seed = seed;
      if (check_box >= 0) check_opt.free_box = check_box;
      const auto file = group_from_json(read_json_file(check_file));
      return emit(check_group(file, check_opt, check_file), report);
    }

    if (*witt) {
      if (!witt_src.given()) throw InputError("witt needs a file or --example");
      if (witt_src.example.empty()) {
        const Json j = read_json_file(witt_src.file);
        if (j.is_object() && j.contains("u0")) {
          const ScalarProduct q(matrix_from_json(j.at("gram"), "$.gram"));
          std::vector<Vector> vs;
          for (std::size_t i = 0; i < j["u0"].size(); ++i)
            vs.push_back(vector_from_json(j["u0"][i], "$.u0[" + std::to_string(i) + "]"));
          for (const auto& v : vs)
            if (v.size() != q.dim()) throw InputError("$.u0: vector length does not match the gram matrix");
          return emit(witt_report(q, Subspace::span(q.dim(), vs), witt_src.file), report);
        }
      }
      const auto file = load_group(witt_src);
      if (!file.group.all_wolf_valid()) throw InputError("group generators are not Wolf-valid; U_0 is undefined");
      const auto s = invariant_spaces(file.group);
      return emit(witt_report(file.group.form(), s.u_0, target_name(witt_src)), report);
    }

    if (*cent) {
      if (!cent_src.given()) throw InputError("centralizer needs a file or --example");
      if (use_family && cent_src.example.empty()) throw InputError("--family requires --example");
      std::optional<std::vector<AffineLog>> candidate;
      if (use_family) candidate = build_example(cent_src.example).commuting_family;
      const auto file = load_group(cent_src);
      return emit(centralizer_report(file.group, seed, target_name(cent_src), candidate), report);
    }

    if (*search) {
      if (frontier) {
        if (dim_max == 0) dim_max = dim;
        return emit(frontier_report(dim, dim_max, seed, samples), report);
      }
      std::vector<SearchConfig> cells;
      for (std::size_t kk = 0; 2 * kk <= dim; ++kk) {
        if (k && *k != kk) continue;
        auto c = make_search_config(dim, kk, trials, seed, entry_bound);
        c.shards = shards;
        c.include_gamma44_pair = gamma44_pair;
        cells.push_back(std::move(c));
      }
      if (cells.empty()) throw InputError("k must satisfy 2k <= n");
      const auto r = search_report(cells, "search n=" + std::to_string(dim));
      if (!emit_dir.empty()) {
        std::filesystem::create_directories(emit_dir);
        for (const auto& c : cells) {
          const auto o = falsification_run(c);
          for (std::size_t i = 0; i < o.witnesses.size(); ++i) {
            const auto g = promote_pair(c, o.witnesses[i].blocks);
            const std::string path = emit_dir + "/witness_n" + std::to_string(c.n) + "_k" + std::to_string(c.k) +
                                     "_" + std::to_string(i) + ".json";
            write_file(path, group_to_json(g, false).dump(2) + "\n");
          }
        }
      }
      return emit(r, report);
    }

    if (*lie) {
      const auto f = three_form_from_json(read_json_file(form_file));
      return emit(lie_report(f, lie_opt, form_file), report);
    }

    if (*exporter) {
      const auto ex = build_example(export_name);
      write_file(export_out, group_to_json(ex.group, true).dump(2) + "\n");
      std::cout << "wrote " << export_out << "\n";
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
