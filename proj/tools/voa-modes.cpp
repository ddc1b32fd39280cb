// voa-modes: verification suites, product tables and intertwiner tables.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "voamodes/voamodes.hpp"
#include "voamodes/verify/report.hpp"

namespace {

using namespace voamodes;
using namespace voamodes::verify;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOverflow = 3;

struct CommonOptions {
  std::string config_file;
  std::optional<int> N, lmax, cap, max_v_weight;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config_file, "key = value configuration file");
  app->add_option("--N", o.N, "matrix bound");
  app->add_option("--lmax", o.lmax, "probe range bound");
  app->add_option("--cap", o.cap, "hard truncation degree");
  app->add_option("--max-v-weight", o.max_v_weight, "largest weight of basis vectors of V");
  app->add_option("--seed", o.seed, "seed for randomized probe selection");
  app->add_option("--workers", o.workers, "concurrent suites");
}

RunConfig build_config(const CommonOptions& o) {
  RunConfig c;
  if (!o.config_file.empty()) load_config_file(c, o.config_file);
  if (o.N) c.N = *o.N;
  if (o.lmax) c.L_max = *o.lmax;
  if (o.cap) c.cap = *o.cap;
  if (o.max_v_weight) c.max_v_weight = *o.max_v_weight;
  if (o.seed) c.seed = *o.seed;
  if (o.workers) c.workers = *o.workers;
  c.validate();
  return c;
}

Json vector_json(const FockVector& v) {
  Json terms = Json::array();
  for (const auto& [p, c] : v.terms()) terms.push_back(Json::array({p.str(), to_string(c)}));
  return terms;
}

template <class Side>
Json matrix_json(const IndexedMatrix<Side>& m) {
  Json out = Json::array();
  for (const auto& [ix, v] : m.entries())
    out.push_back(Json{{"row", ix.first}, {"col", ix.second}, {"terms", vector_json(v)}});
  return out;
}

template <class Side>
std::string matrix_text(const IndexedMatrix<Side>& m) {
  std::string s;
  for (const auto& [ix, v] : m.entries()) {
    if (!s.empty()) s += "; ";
    s += "[" + std::to_string(ix.first) + "," + std::to_string(ix.second) + "] " + v.str();
  }
  return s.empty() ? "0" : s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_csv(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
    os << "\r\n";
  }
}

int cmd_verify(const CommonOptions& o, const std::vector<std::string>& suites,
               const std::string& json_path, bool timing) {
  RunConfig c = build_config(o);
  if (!suites.empty()) c.suites = suites;
  c.validate();
  Context ctx(c);
  RunResult res = run_suites(ctx);
  Json report = report_json(c, res, timing);
  const std::string text = report.dump(2) + "\n";
  if (json_path == "-") {
    std::cout << text;
  } else {
    for (const auto& s : res.suites) {
      std::cout << (s.passed() ? "PASS " : "FAIL ") << s.name << " " << s.tally.passed << "/"
                << s.tally.run;
      if (s.error) std::cout << " truncation overflow: " << *s.error;
      std::cout << "\n";
      if (s.tally.first_failure) {
        const auto& f = *s.tally.first_failure;
        std::cout << "  at " << f.where << "\n  lhs " << f.lhs << "\n  rhs " << f.rhs << "\n";
      }
    }
    if (!json_path.empty()) {
      std::ofstream out(json_path, std::ios::binary);
      if (!out) throw ConfigError("cannot write " + json_path);
      out << text;
    }
  }
  if (res.overflow()) return kExitOverflow;
  return res.passed() ? kExitOk : kExitFail;
}

int cmd_tables(const CommonOptions& o, const std::string& target, const std::string& format,
               const std::string& charge) {
  RunConfig c = build_config(o);
  const int cap = c.effective_cap();
  const auto basis = partitions_up_to(c.max_v_weight);
  HeisenbergVOA V(cap);
  Json rows = Json::array();
  std::vector<std::vector<std::string>> csv;
  if (target == "algebra") {
    csv.push_back({"k", "n", "l", "u", "v", "product"});
    for (int k = 0; k <= c.N; ++k)
      for (int n = 0; n <= c.N; ++n)
        for (int l = 0; l <= c.N; ++l)
          for (const auto& u : basis)
            for (const auto& v : basis) {
              VMatrix p = diamond_VV(V, VMatrix::single(k, n, VAElement(u)),
                                     VMatrix::single(n, l, VAElement(v)));
              rows.push_back(Json{{"k", k}, {"n", n}, {"l", l}, {"u", u.str()}, {"v", v.str()},
                                  {"product", matrix_json(p)}});
              csv.push_back({std::to_string(k), std::to_string(n), std::to_string(l), u.str(),
                             v.str(), matrix_text(p)});
            }
  } else {
    Rational lambda;
    try {
      lambda = parse_rational(charge);
    } catch (const std::exception&) {
      throw ConfigError("bad charge: " + charge);
    }
    FockModule W(lambda, cap);
    csv.push_back({"side", "k", "n", "l", "v", "w", "product"});
    for (const char* side : {"left", "right"})
      for (int k = 0; k <= c.N; ++k)
        for (int n = 0; n <= c.N; ++n)
          for (int l = 0; l <= c.N; ++l)
            for (const auto& v : basis)
              for (const auto& w : basis) {
                const bool left = std::string(side) == "left";
                WMatrix p = left ? diamond_VW(W, VMatrix::single(k, n, VAElement(v)),
                                              WMatrix::single(n, l, ModuleVector(w)))
                                 : diamond_WV(W, WMatrix::single(k, n, ModuleVector(w)),
                                              VMatrix::single(n, l, VAElement(v)));
                rows.push_back(Json{{"side", side}, {"k", k}, {"n", n}, {"l", l},
                                    {"v", v.str()}, {"w", w.str()}, {"product", matrix_json(p)}});
                csv.push_back({side, std::to_string(k), std::to_string(n), std::to_string(l),
                               v.str(), w.str(), matrix_text(p)});
              }
  }
  if (format == "csv") {
    write_csv(std::cout, csv);
  } else {
    Json out{{"target", target}, {"N", c.N}, {"max_v_weight", c.max_v_weight}};
    if (target == "bimodule") out["charge"] = to_string(parse_rational(charge));
    out["rows"] = rows;
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_intertwiner(const CommonOptions& o, const std::string& l1, const std::string& l2) {
  RunConfig c = build_config(o);
  Rational a, b;
  try {
    a = parse_rational(l1);
    b = parse_rational(l2);
  } catch (const std::exception&) {
    throw ConfigError("charges must be written p/q");
  }
  FockIntertwiner Y(a, b, c.effective_cap());
  MapTable f = rho_N(Y, c.N);
  Json entries = Json::array();
  for (const auto& [key, v] : f.entries())
    entries.push_back(Json{{"k", key.k},
                           {"l", key.l},
                           {"w1", key.w1.str()},
                           {"w2", key.w2.str()},
                           {"mode_index", to_string(yf_mode_index(f, key.k, key.l, key.w1.weight()))},
                           {"value", vector_json(v)}});
  Json out{{"l1", to_string(a)},
           {"l2", to_string(b)},
           {"N", c.N},
           {"h1", to_string(Y.source1().lowest_weight())},
           {"h2", to_string(Y.source2().lowest_weight())},
           {"h3", to_string(Y.target().lowest_weight())},
           {"shift", to_string(Y.shift())},
           {"entries", entries}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for mode-transition algebras of the Heisenberg vertex algebra"};
  app.require_subcommand(1);

  CommonOptions vo, to, io;
  std::vector<std::string> suites;
  std::string json_path;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify, vo);
  verify->add_option("--suite", suites, "suite to run (repeatable)");
  verify->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");
  verify->add_flag("--timing", timing, "include wall times in the report");

  std::string target = "algebra", format = "json", charge = "1/2";
  auto* tables = app.add_subcommand("tables", "emit product tables");
  add_common(tables, to);
  tables->add_option("--target", target)->check(CLI::IsMember({"algebra", "bimodule"}));
  tables->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  tables->add_option("--charge", charge, "module charge for the bimodule target");

  std::string l1, l2;
  auto* inter = app.add_subcommand("intertwiner", "emit the table of a Fock intertwining operator");
  add_common(inter, io);
  inter->add_option("--l1", l1, "charge of the first source module")->required();
  inter->add_option("--l2", l2, "charge of the second source module")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*verify) return cmd_verify(vo, suites, json_path, timing);
    if (*tables) return cmd_tables(to, target, format, charge);
    return cmd_intertwiner(io, l1, l2);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TruncationOverflow& e) {
    std::cerr << "truncation overflow: " << e.what() << "\n";
    return kExitOverflow;
  }
}
