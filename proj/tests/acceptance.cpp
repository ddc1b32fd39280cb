// Acceptance run: one PASS/FAIL line per criterion.
// usage: acceptance <voa-modes binary> <report schema> <python interpreter>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "voamodes/verify/report.hpp"

using namespace voamodes;
using namespace voamodes::verify;

namespace {

struct Line {
  bool ok = true;
  std::string detail;
  void need(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

const SuiteReport& find(const RunResult& r, const std::string& name) {
  for (const auto& s : r.suites)
    if (s.name == name) return s;
  throw std::runtime_error("missing suite " + name);
}

void require_suite(Line& line, const RunResult& r, const std::string& name, long min_cases = 1) {
  const auto& s = find(r, name);
  std::ostringstream os;
  os << name << " " << s.tally.passed << "/" << s.tally.run;
  if (s.error) os << " (" << *s.error << ")";
  if (s.tally.first_failure) os << " first failure at " << s.tally.first_failure->where;
  line.need(s.passed() && static_cast<long>(s.tally.run) >= min_cases, os.str());
  if (line.detail.empty() || line.ok) {
    line.detail += (line.detail.empty() ? "" : ", ") + os.str();
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WEXITSTATUS(rc);
}

void emit(int n, const std::string& title, const Line& line, bool& all) {
  std::cout << (line.ok ? "PASS" : "FAIL") << " " << n << " " << title;
  if (!line.detail.empty()) std::cout << ": " << line.detail;
  std::cout << std::endl;
  all = all && line.ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <voa-modes> <schema> <python>\n";
    return 2;
  }
  const std::string cli = argv[1], schema = argv[2], python = argv[3];

  RunConfig cfg;
  Context ctx(cfg);
  RunResult r = run_suites(ctx);
  bool all = true;

  {
    Line l;
    require_suite(l, r, "homomorphism", 10000);
    emit(1, "homomorphism of the product on every probe", l, all);
  }
  {
    Line l;
    require_suite(l, r, "unit");
    emit(2, "unit and quotient identities", l, all);
  }
  {
    Line l;
    require_suite(l, r, "bimodule");
    emit(3, "bimodule compatibility of theta_Y", l, all);
  }
  {
    Line l;
    require_suite(l, r, "three-forms");
    require_suite(l, r, "exp-L");
    emit(4, "right-action forms and the exponential identity", l, all);
  }
  {
    Line l;
    require_suite(l, r, "kernel", 1000);
    require_suite(l, r, "omega-commutators");
    emit(5, "kernel elements vanish under theta_Y", l, all);
  }
  {
    Line l;
    require_suite(l, r, "binomial-218", 200);
    emit(6, "binomial identity", l, all);
  }
  {
    Line l;
    require_suite(l, r, "roundtrip");
    require_suite(l, r, "jacobi-cert");
    require_suite(l, r, "L1-cert");
    emit(7, "round trip and certification", l, all);
  }
  {
    Line l;
    require_suite(l, r, "reachability");
    emit(8, "injectivity witnesses and reachability", l, all);
  }
  {
    Line l;
    require_suite(l, r, "opposite", 100);
    OppositeCalibration cal = calibrate_opposite(ctx);
    l.need(cal.passing.size() == 1, "sign calibration not unique");
    emit(9, "opposite algebra", l, all);
  }
  {
    Line l;
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("voa-modes-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto p = [&](const std::string& f) { return (dir / f).string(); };
    int rc1 = run(cli + " verify --json " + p("a.json") + " > " + p("a.txt"));
    int rc2 = run(cli + " verify --json " + p("b.json") + " > " + p("b.txt"));
    l.need(rc1 == 0 && rc2 == 0, "verify exit codes " + std::to_string(rc1) + "," + std::to_string(rc2));
    l.need(slurp(p("a.json")) == slurp(p("b.json")) && !slurp(p("a.json")).empty(),
           "verify reports differ");
    int rcs = run(python + " -c \"import json,jsonschema,sys; jsonschema.validate(json.load(open(sys.argv[1])), json.load(open(sys.argv[2])))\" " +
                  p("a.json") + " " + schema);
    l.need(rcs == 0, "report does not validate against the schema");
    const std::vector<std::string> cmds = {
        "tables --target algebra --format json", "tables --target algebra --format csv",
        "tables --target bimodule --format json --charge 1/2", "intertwiner --l1 1/2 --l2 1/2",
        "intertwiner --l1 1 --l2 -1/2"};
    for (size_t i = 0; i < cmds.size(); ++i) {
      std::string x = p("t" + std::to_string(i) + "x"), y = p("t" + std::to_string(i) + "y");
      int ra = run(cli + " " + cmds[i] + " > " + x);
      int rb = run(cli + " " + cmds[i] + " > " + y);
      l.need(ra == 0 && rb == 0 && slurp(x) == slurp(y) && !slurp(x).empty(),
             "'" + cmds[i] + "' not reproducible");
    }
    if (l.ok) l.detail = "verify exit 0, schema-valid, byte-identical reruns";
    fs::remove_all(dir);
    emit(10, "command-line contract", l, all);
  }
  return all ? 0 : 1;
}
