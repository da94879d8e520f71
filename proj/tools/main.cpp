#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "bumpless/asm.hpp"
#include "bumpless/bpd.hpp"
#include "bumpless/cache.hpp"
#include "bumpless/groebner.hpp"
#include "bumpless/monomial.hpp"
#include "bumpless/poly.hpp"
#include "bumpless/transition.hpp"
#include "bumpless/verify.hpp"

using namespace bumpless;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kReportSchema = "bumpless.report/1";
constexpr const char* kResultSchema = "bumpless.result/1";

struct RunConfig {
  std::string command;
  std::string sub;
  std::vector<std::string> inputs;
  std::string order = "diag";
  bool json_out = false;
  std::string cache_dir;
  bool no_cache = false;
  bool extended = false;
  unsigned workers = 0;
  int all_sn = 0;
  bool pairs = false;
  std::string cell;
  std::string grading = "z2n";
  std::string beta;
  int n = 0;
  bool no_multidegree = false;
};

std::string read_arg(const std::string& s) {
  if (s.empty() || s[0] != '@') return s;
  std::ifstream in(s.substr(1));
  if (!in) throw InputError("cannot read " + s.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_asm(const std::string& s) {
  return s.find_first_of(" ;/\n") != std::string::npos || s.find('-') != std::string::npos;
}

// ASM on the command line: rows separated by ';', '/' or newlines.
Asm parse_asm(const std::string& s) {
  std::string t = read_arg(s);
  for (char& ch : t)
    if (ch == ';' || ch == '/') ch = '\n';
  return Asm::parse(t);
}

Asm parse_asm_or_perm(const std::string& s) {
  const std::string t = read_arg(s);
  if (looks_like_asm(t)) return parse_asm(t);
  return Asm::from_permutation(Permutation::parse(t));
}

std::vector<Permutation> parse_perms(const std::vector<std::string>& in) {
  std::vector<Permutation> out;
  for (const auto& s : in) out.push_back(Permutation::parse(read_arg(s)));
  return out;
}

int common_n(const std::vector<Permutation>& ws) {
  if (ws.empty()) throw InputError("expected at least one permutation");
  for (const auto& w : ws)
    if (w.size() != ws.front().size()) throw InputError("permutations of different sizes");
  return ws.front().size();
}

Cell parse_cell(const std::string& s) {
  const auto c = s.find(',');
  try {
    if (c == std::string::npos) throw std::invalid_argument("");
    return Cell{std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
  } catch (const std::logic_error&) {
    throw InputError("bad cell '" + s + "' (expected row,col)");
  }
}

Grading parse_grading(const std::string& g) {
  if (g == "standard") return Grading::Standard;
  if (g == "zn") return Grading::Zn;
  if (g == "z2n") return Grading::Z2n;
  throw InputError("unknown grading '" + g + "' (standard, zn, z2n)");
}

int infer_grid(const std::string& text) {
  static const std::regex var(R"(z\[(\d+),(\d+)\])");
  int n = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it)
    n = std::max({n, std::stoi((*it)[1]), std::stoi((*it)[2])});
  return n;
}

// "(z[1,1]^2*z[2,2], z[1,2])", a JSON file "@file.json", or a permutation
// (meaning in_order(I_w)).
MonomialIdeal parse_monomial_ideal(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw InputError("expected one monomial ideal");
  const std::string text = read_arg(cfg.inputs[0]);
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') return MonomialIdeal::from_json(json::parse(text));
  if (text.find('z') == std::string::npos) {
    const auto w = Permutation::parse(text);
    return initial_ideal(Ideal::schubert(w), TermOrder::parse(cfg.order, w.size()));
  }
  const int n = cfg.n > 0 ? cfg.n : infer_grid(text);
  if (n < 1 || n > kMaxGrid) throw InputError("grid size must be in [1, " + std::to_string(kMaxGrid) + "]");
  std::string body = text;
  std::erase_if(body, [](char ch) { return ch == '(' || ch == ')'; });
  std::vector<ZMono> gens;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i < body.size() && body[i] == '[') ++depth;
    if (i < body.size() && body[i] == ']') --depth;
    if (i == body.size() || (body[i] == ',' && depth == 0)) {
      const std::string tok = body.substr(start, i - start);
      start = i + 1;
      if (tok.find_first_not_of(" \t\n") == std::string::npos) continue;
      const auto p = QPoly::parse(tok, n);
      if (p.terms().size() != 1) throw InputError("'" + tok + "' is not a monomial");
      gens.push_back(p.terms().begin()->first);
    }
  }
  return MonomialIdeal(n, gens);
}

json strings_json(const std::vector<QPoly>& v) {
  json out = json::array();
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

json perms_json(const std::set<Permutation>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

int emit_result(const RunConfig& cfg, const json& result, const std::string& text) {
  if (cfg.json_out)
    std::cout << json{{"schema", kResultSchema}, {"command", cfg.command + " " + cfg.sub}, {"result", result}}.dump(2)
              << "\n";
  else
    std::cout << text;
  return 0;
}

int run_bpd(const RunConfig& cfg) {
  const auto ws = parse_perms(cfg.inputs);
  if (ws.size() != 1) throw InputError("expected one permutation");
  const auto bpds = enumerate_bpds(ws[0]);
  if (cfg.sub == "count") return emit_result(cfg, bpds.size(), std::to_string(bpds.size()) + "\n");
  json arr = json::array();
  std::string text;
  for (const auto& b : bpds) {
    arr.push_back(b.to_json());
    text += b.to_ascii() + "\n";
  }
  return emit_result(cfg, arr, text);
}

int run_poly(const RunConfig& cfg) {
  const auto ws = parse_perms(cfg.inputs);
  if (ws.size() != 1) throw InputError("expected one permutation");
  const auto& w = ws[0];
  SparsePoly f;
  if (cfg.sub == "schubert") f = single_schubert_bpd(w);
  else if (cfg.sub == "dschubert") f = double_schubert_bpd(w);
  else {
    f = grothendieck_divdiff(w);
    if (!cfg.beta.empty()) {
      mpz_class b;
      if (b.set_str(cfg.beta, 10) != 0) throw InputError("bad --beta '" + cfg.beta + "' (expected an integer)");
      f = specialize(f, {{f.universe()->index("b"), b}});
    }
  }
  return emit_result(cfg, f.to_json(), f.to_string() + "\n");
}

Ideal ideal_input(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw InputError("expected a permutation or ASM");
  std::vector<Ideal> parts;
  for (const auto& s : cfg.inputs) {
    const std::string t = read_arg(s);
    parts.push_back(looks_like_asm(t) ? Ideal::of_asm(parse_asm(t)) : Ideal::schubert(Permutation::parse(t)));
  }
  Ideal j = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].grid() != j.grid()) throw InputError("inputs of different sizes");
    j = intersect_ideals(j, parts[i]);
  }
  return j;
}

int run_ideal(const RunConfig& cfg) {
  if (cfg.sub == "fulton") {
    const auto ws = parse_perms(cfg.inputs);
    if (ws.size() != 1) throw InputError("expected one permutation");
    const auto g = fulton_generators(ws[0]);
    std::string text;
    for (const auto& p : g) text += p.to_string() + "\n";
    return emit_result(cfg, strings_json(g), text);
  }
  if (cfg.sub == "asm") {
    if (cfg.inputs.size() != 1) throw InputError("expected one ASM");
    const auto g = asm_ideal_generators(parse_asm_or_perm(cfg.inputs[0]));
    std::string text;
    for (const auto& p : g) text += p.to_string() + "\n";
    return emit_result(cfg, strings_json(g), text);
  }
  const Ideal j = ideal_input(cfg);
  const auto order = TermOrder::parse(cfg.order, j.grid());
  if (cfg.sub == "gb") {
    const auto& gb = j.gb(order);
    std::string text;
    for (const auto& p : gb) text += p.to_string() + "\n";
    return emit_result(cfg, {{"order", order.name()}, {"gb", strings_json(gb)}}, text);
  }
  const auto in = initial_ideal(j, order);
  return emit_result(cfg, in.to_json(), in.to_string() + "\n");
}

int run_mono(const RunConfig& cfg) {
  const auto i = parse_monomial_ideal(cfg);
  if (cfg.sub == "decompose") {
    json arr = json::array();
    std::string text;
    for (const auto& c : irreducible_components(i)) {
      arr.push_back(c.to_json());
      text += c.to_string() + "\n";
    }
    return emit_result(cfg, arr, text);
  }
  if (cfg.sub == "ass") {
    const auto minimal = minimal_primes(i);
    json arr = json::array();
    std::map<std::size_t, int> heights;
    std::string text;
    for (const auto& p : associated_primes(i)) {
      json e = {{"prime", prime_to_string(p)}, {"height", p.size()}, {"minimal", minimal.count(p) > 0}};
      std::string line = prime_to_string(p) + "  height " + std::to_string(p.size());
      if (minimal.count(p)) {
        const long m = multiplicity_at(i, p);
        e["multiplicity"] = m;
        line += "  minimal, multiplicity " + std::to_string(m);
      }
      ++heights[p.size()];
      arr.push_back(e);
      text += line + "\n";
    }
    std::string summary = std::to_string(arr.size()) + " associated primes";
    json by_height = json::object();
    for (const auto& [h, c] : heights) {
      summary += ", " + std::to_string(c) + " of height " + std::to_string(h);
      by_height[std::to_string(h)] = c;
    }
    return emit_result(cfg, {{"primes", arr}, {"count", arr.size()}, {"by_height", by_height}}, text + summary + "\n");
  }
  const Grading g = parse_grading(cfg.grading);
  const auto f = cfg.sub == "kpoly" ? k_polynomial(i, g) : multidegree(i, g);
  return emit_result(cfg, f.to_json(), f.to_string() + "\n");
}

int run_lattice(const RunConfig& cfg) {
  std::vector<Asm> as;
  for (const auto& s : cfg.inputs) as.push_back(parse_asm_or_perm(s));
  if (as.empty()) throw InputError("expected at least one ASM or permutation");
  for (const auto& a : as)
    if (a.size() != as.front().size()) throw InputError("inputs of different sizes");
  if (cfg.sub == "join" || cfg.sub == "meet") {
    const Asm r = cfg.sub == "join" ? join(as) : meet(as);
    json res = {{"asm", r.to_string()}};
    if (r.is_permutation()) res["permutation"] = r.to_permutation().to_string();
    return emit_result(cfg, res, r.to_string() + (r.to_string().ends_with('\n') ? "" : "\n"));
  }
  if (as.size() != 1) throw InputError("expected one ASM");
  const auto ps = cfg.sub == "perm" ? perm_set(as[0]) : bigrassmannian_join_decomposition(as[0]);
  std::string text;
  for (const auto& p : ps) text += p.to_string() + "\n";
  return emit_result(cfg, perms_json(ps), text);
}

// Cases are independent; each task fills its own slot so output order does
// not depend on scheduling.
std::vector<Report> run_cases(const std::vector<std::function<Report()>>& tasks, unsigned workers) {
  std::vector<Report> out(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next++) < tasks.size();) {
      try {
        out[k] = tasks[k]();
      } catch (const InputError& e) {
        errors[k] = e.what();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw InputError(e);
  return out;
}

std::vector<Permutation> perm_pool(const RunConfig& cfg) {
  if (cfg.all_sn > 0) {
    const int limit = cfg.extended ? kMaxGrid : 5;
    if (cfg.all_sn > limit)
      throw InputError("--all-sn " + std::to_string(cfg.all_sn) + " exceeds " + std::to_string(limit) +
                       (cfg.extended ? "" : " (use --extended)"));
    return all_permutations(cfg.all_sn);
  }
  return parse_perms(cfg.inputs);
}

std::vector<std::function<Report()>> verify_tasks(const RunConfig& cfg) {
  std::vector<std::function<Report()>> tasks;
  const std::string& k = cfg.sub;
  const auto per_corner = [&](auto fn) {
    for (const auto& w : perm_pool(cfg)) {
      if (!cfg.cell.empty()) {
        const Cell c = parse_cell(cfg.cell);
        tasks.push_back([=] { return fn(w, c); });
        continue;
      }
      for (const auto& c : lower_outside_corners(w)) tasks.push_back([=] { return fn(w, c); });
    }
  };

  if (k == "main" || k == "ycompat") {
    std::vector<std::vector<Permutation>> cases;
    if (cfg.all_sn > 0) {
      const auto perms = perm_pool(cfg);
      for (std::size_t i = 0; i < perms.size(); ++i) {
        if (!cfg.pairs) cases.push_back({perms[i]});
        else
          for (std::size_t j = i + 1; j < perms.size(); ++j)
            if (perms[i].length() == perms[j].length()) cases.push_back({perms[i], perms[j]});
      }
    } else {
      cases.push_back(parse_perms(cfg.inputs));
    }
    for (const auto& ws : cases) {
      const int n = common_n(ws);
      const auto order = TermOrder::parse(cfg.order, n);
      if (k == "main") {
        tasks.push_back([=] { return verify_main_theorem(ws, order); });
        continue;
      }
      std::optional<Cell> y;
      if (!cfg.cell.empty()) y = parse_cell(cfg.cell);
      else y = maximal_accessible_cell(std::set<Permutation>(ws.begin(), ws.end()));
      if (!y) continue;
      tasks.push_back([=] { return verify_ycompat(ws, *y, order); });
    }
  } else if (k == "transition") {
    per_corner([](const Permutation& w, const Cell& c) { return verify_poly_transition(w, c, false); });
  } else if (k == "groth-transition") {
    per_corner([](const Permutation& w, const Cell& c) { return verify_poly_transition(w, c, true); });
  } else if (k == "hilbert") {
    per_corner([](const Permutation& w, const Cell& c) { return verify_hilbert_transition(w, c); });
  } else if (k == "linkdecomp") {
    per_corner([](const Permutation& w, const Cell& c) { return verify_link_decomposition(w, c); });
  } else if (k == "theoremB") {
    const bool md = !cfg.no_multidegree;
    for (const auto& w : perm_pool(cfg)) tasks.push_back([=] { return verify_theorem_b(w, md); });
  } else if (k == "asm") {
    std::vector<Asm> as;
    if (cfg.all_sn > 0) {
      if (cfg.all_sn > (cfg.extended ? 5 : 4)) throw InputError("--all-sn too large for the ASM suite");
      as = all_asms(cfg.all_sn);
    } else {
      for (const auto& s : cfg.inputs) as.push_back(parse_asm_or_perm(s));
    }
    for (const auto& a : as) tasks.push_back([=] { return verify_asm(a); });
  } else if (k == "partition") {
    for (const auto& s : cfg.inputs) {
      std::vector<int> mu;
      std::stringstream ss(s);
      std::string part;
      while (std::getline(ss, part, ','))
        try {
          mu.push_back(std::stoi(part));
        } catch (const std::logic_error&) {
          throw InputError("bad partition '" + s + "' (expected e.g. 4,2,1)");
        }
      tasks.push_back([=] { return verify_partition(mu); });
    }
  }
  if (tasks.empty()) throw InputError("no cases to verify");
  return tasks;
}

int run_verify(const RunConfig& cfg) {
  const auto reports = run_cases(verify_tasks(cfg), cfg.workers);
  std::size_t failed = 0;
  for (const auto& r : reports)
    if (!r.pass) ++failed;
  if (cfg.json_out) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    std::cout << json{{"schema", kReportSchema},
                      {"suite", cfg.sub},
                      {"status", failed ? "fail" : "pass"},
                      {"cases", reports.size()},
                      {"failed", failed},
                      {"reports", arr}}
                     .dump(2)
              << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.case_id << "\n";
      if (!r.pass) std::cout << r.to_json().dump(2) << "\n";
    }
    std::cout << (reports.size() - failed) << "/" << reports.size() << " cases passed\n";
  }
  return failed ? 1 : 0;
}

fs::path default_cache_dir() {
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "bumpless";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "bumpless";
  return fs::temp_directory_path() / "bumpless-cache";
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Bumpless pipe dreams, ASM ideals and their Groebner degenerations"};
  app.require_subcommand(1);
  app.add_flag("--json", cfg.json_out, "Print JSON instead of text");
  app.add_option("--cache-dir", cfg.cache_dir, "Groebner basis cache directory (env BUMPLESS_CACHE_DIR)");
  app.add_flag("--no-cache", cfg.no_cache, "Do not read or write the Groebner basis cache");
  app.add_flag("--extended", cfg.extended, "Allow the larger runs (also env BUMPLESS_EXTENDED=1)");
  app.add_option("--workers", cfg.workers, "Parallel verification cases (default: hardware threads)");

  const auto add = [&](const std::string& name, const std::string& help, std::vector<std::string> subs) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("sub", cfg.sub, "One of: " + CLI::detail::join(subs, ", "))
        ->required()
        ->check(CLI::IsMember(subs));
    c->add_option("inputs", cfg.inputs, "Permutations, ASMs ('0 1 0;1 -1 1;0 1 0'), ideals or @file");
    return c;
  };
  add("bpd", "Bumpless pipe dreams", {"enum", "count"});
  auto* poly = add("poly", "Schubert and Grothendieck polynomials", {"schubert", "dschubert", "groth"});
  poly->add_option("--beta", cfg.beta, "Specialize the Grothendieck parameter to this integer");
  auto* ideal = add("ideal", "Schubert, ASM and intersection ideals", {"fulton", "asm", "gb", "init"});
  ideal->add_option("--order", cfg.order, "diag, antidiag, col-lex, deglex, tau:a,b, yref:a,b:<base>");
  auto* mono = add("mono", "Monomial ideals", {"decompose", "ass", "kpoly", "multidegree"});
  mono->add_option("--grading", cfg.grading, "standard, zn or z2n")->default_str("z2n");
  mono->add_option("--order", cfg.order, "Order used when the input is a permutation");
  mono->add_option("--n", cfg.n, "Grid size (default: largest index in the input)");
  add("lattice", "ASM lattice operations", {"join", "meet", "perm", "decompose"});
  auto* verify = add("verify", "Verification suites",
                     {"main", "transition", "groth-transition", "theoremB", "linkdecomp", "asm", "ycompat", "hilbert",
                      "partition"});
  verify->add_option("--all-sn", cfg.all_sn, "Run over all of S_N (all ASMs of size N for 'asm')");
  verify->add_flag("--pairs", cfg.pairs, "With --all-sn: same-length pairs instead of single permutations");
  verify->add_option("--order", cfg.order, "Term order for main and ycompat");
  verify->add_option("--cell", cfg.cell, "Corner or y cell as row,col");
  verify->add_flag("--no-multidegree", cfg.no_multidegree, "theoremB: skip the multidegree comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (const char* e = std::getenv("BUMPLESS_EXTENDED"); e && std::string(e) == "1") cfg.extended = true;
  if (cfg.workers == 0) cfg.workers = std::max(1u, std::thread::hardware_concurrency());

  try {
    if (!cfg.no_cache) {
      const fs::path dir = cfg.cache_dir.empty() ? cache_dir_from_env(default_cache_dir()) : fs::path(cfg.cache_dir);
      try {
        install_gb_cache(std::make_shared<GbCache>(dir));
      } catch (const fs::filesystem_error& e) {
        std::cerr << "warning: cache disabled (" << e.what() << ")\n";
      }
    }
    if (cfg.command == "bpd") return run_bpd(cfg);
    if (cfg.command == "poly") return run_poly(cfg);
    if (cfg.command == "ideal") return run_ideal(cfg);
    if (cfg.command == "mono") return run_mono(cfg);
    if (cfg.command == "lattice") return run_lattice(cfg);
    return run_verify(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
