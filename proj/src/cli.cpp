#include "shiftlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "shiftlab/block_codes.hpp"
#include "shiftlab/ck_invariants.hpp"
#include "shiftlab/io.hpp"
#include "shiftlab/shift_spaces.hpp"
#include "shiftlab/spectral.hpp"

namespace shiftlab {

namespace {

using io::Json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr unsigned long kCountHorizon = 8;
constexpr int kSchemaVersion = 1;

struct Context {
  bool json = false;
  double tol = kCheckTol;
  std::ostream* out = nullptr;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

Json header(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

void emit(const Context& c, const Json& j, const std::string& text) {
  if (c.json)
    *c.out << j.dump(2) << "\n";
  else
    *c.out << text;
}

Json group_json(const FgAbGroup& G) {
  Json j;
  j["text"] = G.to_string();
  Json f = Json::array();
  for (const auto& d : G.invariant_factors()) f.push_back(io::integer_to_json(d));
  j["invariant_factors"] = std::move(f);
  j["free_rank"] = G.free_rank();
  return j;
}

Json iso_json(const IsoType& t) {
  Json j;
  j["text"] = t.to_string();
  Json f = Json::array();
  for (const auto& d : t.invariant_factors) f.push_back(io::integer_to_json(d));
  j["invariant_factors"] = std::move(f);
  j["free_rank"] = t.free_rank;
  return j;
}

Json order_json(const GroupElement& g) {
  const auto o = order(g);
  return o ? io::integer_to_json(*o) : Json(nullptr);
}

std::string order_text(const GroupElement& g) {
  const auto o = order(g);
  return o ? o->get_str() : "infinite";
}

Json pair_json(const PairInvariant& p) {
  Json j;
  j["text"] = p.to_string();
  j["group"] = group_json(p.group());
  j["element"] = p.element().to_string();
  j["element_order"] = order_json(p.element());
  return j;
}

void print_matrix(std::ostream& t, const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    t << " ";
    for (std::size_t j = 0; j < m.cols(); ++j) t << " " << m(i, j).get_str();
    t << "\n";
  }
}

Json warnings_json(const MarkovShiftSpec& s) {
  Json w = Json::array();
  for (const auto& x : s.warnings) w.push_back(x);
  return w;
}

void print_warnings(std::ostream& t, const MarkovShiftSpec& s) {
  for (const auto& w : s.warnings) t << "warning: " << w << "\n";
}

Json counts_json(const std::vector<Integer>& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(io::integer_to_json(x));
  return j;
}

std::vector<Integer> counts(const IntMatrix& A) {
  std::vector<Integer> v;
  for (unsigned long n = 1; n <= kCountHorizon; ++n) v.push_back(periodic_count(A, n));
  return v;
}

std::string join(const std::vector<Integer>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.get_str();
  return s;
}

// ---- commands

int cmd_analyze(const Context& c, const std::string& path) {
  const io::MatrixFile f = io::read_matrix(path);
  const MarkovShiftSpec s = analyze(f.matrix);
  Json j = header("analyze");
  j["name"] = f.name;
  j["states"] = s.alphabet_size;
  j["is_01"] = s.is_01;
  j["essential"] = s.essential;
  j["irreducible"] = s.irreducible;
  j["is_permutation"] = s.is_permutation;
  j["period"] = s.period ? Json(*s.period) : Json(nullptr);
  j["aperiodic"] = s.aperiodic;
  j["n0"] = s.n0 ? Json(*s.n0) : Json(nullptr);
  j["warnings"] = warnings_json(s);

  std::ostringstream t;
  t << "name: " << f.name << "\nstates: " << s.alphabet_size << "\n0-1: " << yes(s.is_01)
    << "\nessential: " << yes(s.essential) << "\nirreducible: " << yes(s.irreducible)
    << "\npermutation: " << yes(s.is_permutation) << "\nperiod: " << (s.period ? std::to_string(*s.period) : "-")
    << "\naperiodic: " << yes(s.aperiodic) << "\nn0: " << (s.n0 ? std::to_string(*s.n0) : "-") << "\n";
  print_warnings(t, s);
  emit(c, j, t.str());
  return kOk;
}

int cmd_invariant(const Context& c, const std::string& path) {
  const io::MatrixFile f = io::read_matrix(path);
  const IntMatrix& A = f.matrix;
  const MarkovShiftSpec s = analyze(A);
  const BowenFranks bf = bowen_franks(A);
  const K0Group k = k0(A);
  const EPair ep = e_pair(A);
  const PairInvariant unit_pair(ep.tensor.embed(ones_vector(A.rows()), ones_vector(A.rows())));
  const KunnethTypes kt = kunneth(iso_type(k.group));

  Json j = header("invariant");
  j["name"] = f.name;
  j["bf_group"] = group_json(bf.group);
  j["det_id_minus_A"] = io::integer_to_json(bf.det);
  Json kj;
  kj["group"] = group_json(k.group);
  kj["unit"] = k.unit.to_string();
  kj["unit_order"] = order_json(k.unit);
  j["k0"] = std::move(kj);
  j["e_pair"] = pair_json(ep.pair);
  j["unit_pair"] = pair_json(unit_pair);
  j["e_vs_unit"] = to_string(pair_equiv(ep.pair, unit_pair).verdict);
  Json kn;
  kn["tensor_part"] = iso_json(kt.tensor_part);
  kn["k0"] = iso_json(kt.k0);
  kn["k1"] = iso_json(kt.k1);
  j["kunneth"] = std::move(kn);
  j["warnings"] = warnings_json(s);

  std::ostringstream t;
  t << "name: " << f.name << "\nbf: " << bf.group.to_string() << "\ndet(I - A): " << bf.det.get_str()
    << "\nk0: " << k.group.to_string() << ", unit " << k.unit.to_string() << " of order " << order_text(k.unit)
    << "\ne-pair: " << ep.pair.to_string() << ", element of order " << order_text(ep.pair.element())
    << "\nunit-pair: " << unit_pair.to_string() << "\ne-pair vs unit-pair: "
    << to_string(pair_equiv(ep.pair, unit_pair).verdict) << "\nkunneth tensor part: " << kt.tensor_part.to_string()
    << "\nkunneth K0: " << kt.k0.to_string() << "\nkunneth K1: " << kt.k1.to_string() << "\n";
  print_warnings(t, s);
  emit(c, j, t.str());
  return kOk;
}

int cmd_compare(const Context& c, const std::string& pa, const std::string& pb) {
  const io::MatrixFile fa = io::read_matrix(pa), fb = io::read_matrix(pb);
  const Comparison cmp = compare(fa.matrix, fb.matrix);
  const std::vector<Integer> ca = counts(fa.matrix), cb = counts(fb.matrix);
  std::optional<unsigned long> first_difference;
  for (unsigned long n = 1; n <= kCountHorizon && !first_difference; ++n)
    if (ca[n - 1] != cb[n - 1]) first_difference = n;

  Json j = header("compare");
  j["left"] = fa.name;
  j["right"] = fb.name;
  j["checks"] = Json::array();
  for (const auto& ch : cmp.checks)
    j["checks"].push_back(Json{{"name", ch.name},
                               {"verdict", to_string(ch.verdict)},
                               {"left", ch.left},
                               {"right", ch.right},
                               {"certificate", ch.certificate}});
  j["verdict"] = cmp.verdict;
  j["distinguished"] = cmp.distinguished;
  Json pc;
  pc["n_max"] = kCountHorizon;
  pc["left"] = counts_json(ca);
  pc["right"] = counts_json(cb);
  pc["first_difference"] = first_difference ? Json(*first_difference) : Json(nullptr);
  j["periodic_counts"] = std::move(pc);

  std::ostringstream t;
  for (const auto& ch : cmp.checks)
    t << ch.name << ": " << to_string(ch.verdict) << " (" << ch.left << " vs " << ch.right << ")\n";
  t << "periodic counts n = 1.." << kCountHorizon << ": " << join(ca) << " vs " << join(cb) << "\n";
  if (first_difference) t << "periodic counts differ at n = " << *first_difference << "\n";
  t << "verdict: " << cmp.verdict << "\n";
  emit(c, j, t.str());
  return cmp.distinguished || first_difference ? kNegative : kOk;
}

int cmd_bf(const Context& c, const std::string& path) {
  const io::MatrixFile f = io::read_matrix(path);
  const BowenFranks bf = bowen_franks(f.matrix);
  Json j = header("bf");
  j["name"] = f.name;
  j["bf_group"] = group_json(bf.group);
  j["det_id_minus_A"] = io::integer_to_json(bf.det);
  emit(c, j, "bf: " + bf.group.to_string() + "\ndet(I - A): " + bf.det.get_str() + "\n");
  return kOk;
}

int cmd_k0(const Context& c, const std::string& path) {
  const io::MatrixFile f = io::read_matrix(path);
  const K0Group k = k0(f.matrix);
  Json j = header("k0");
  j["name"] = f.name;
  j["group"] = group_json(k.group);
  j["unit"] = k.unit.to_string();
  j["unit_order"] = order_json(k.unit);
  emit(c, j, "k0: " + k.group.to_string() + "\nunit: " + k.unit.to_string() + "\nunit order: " + order_text(k.unit) + "\n");
  return kOk;
}

int cmd_kunneth(const Context& c, const std::string& path) {
  const io::MatrixFile f = io::read_matrix(path);
  const KunnethTypes kt = kunneth(f.matrix);
  Json j = header("kunneth");
  j["name"] = f.name;
  j["k0_of_A"] = iso_json(kt.k0_of_A);
  j["tensor_part"] = iso_json(kt.tensor_part);
  j["k0"] = iso_json(kt.k0);
  j["k1"] = iso_json(kt.k1);
  emit(c, j,
       "k0 of A: " + kt.k0_of_A.to_string() + "\ntensor part: " + kt.tensor_part.to_string() + "\nK0: " +
           kt.k0.to_string() + "\nK1: " + kt.k1.to_string() + "\n");
  return kOk;
}

int cmd_edge_graph(const Context& c, const std::string& path, std::string prefix) {
  const io::MatrixFile f = io::read_matrix(path);
  const EdgeGraph g = edge_graph(f.matrix);
  if (prefix.empty()) prefix = (std::filesystem::path(path).parent_path() / std::filesystem::path(path).stem()).string() + ".edge";
  const std::vector<std::pair<std::string, const IntMatrix*>> files{
      {prefix + ".AG.json", &g.AG}, {prefix + ".R.json", &g.R}, {prefix + ".S.json", &g.S}};
  const char* labels[] = {"AG", "R", "S"};
  for (std::size_t i = 0; i < files.size(); ++i) {
    Json m;
    m["name"] = f.name + " " + labels[i];
    m["rows"] = io::matrix_to_json(*files[i].second);
    io::write_file(files[i].first, m.dump() + "\n");
  }

  Json j = header("edge-graph");
  j["name"] = f.name;
  j["edges"] = Json::array();
  for (const Edge& e : g.edges)
    j["edges"].push_back(Json{{"source", e.source + 1}, {"target", e.target + 1}, {"index", e.index}});
  j["AG"] = io::matrix_to_json(g.AG);
  j["R"] = io::matrix_to_json(g.R);
  j["S"] = io::matrix_to_json(g.S);
  j["files"] = Json::array();
  for (const auto& fl : files) j["files"].push_back(fl.first);

  std::ostringstream t;
  t << "edges: " << g.edges.size() << "\n";
  for (std::size_t k = 0; k < g.edges.size(); ++k)
    t << "  e" << k + 1 << ": " << g.edges[k].source + 1 << " -> " << g.edges[k].target + 1 << "\n";
  t << "AG:\n";
  print_matrix(t, g.AG);
  t << "A = RS and AG = SR: verified\n";
  for (const auto& fl : files) t << "wrote " << fl.first << "\n";
  emit(c, j, t.str());
  return kOk;
}

int cmd_sse_verify(const Context& c, const std::string& path) {
  const SseChain chain = io::read_chain(path);
  bool all = true;
  Json steps = Json::array();
  std::ostringstream t;
  for (std::size_t k = 0; k < chain.steps.size(); ++k) {
    const SseStep& s = chain.steps[k];
    const bool ok = verify_sse_step(chain.matrices[k], chain.matrices[k + 1], s.R, s.S);
    Json sj{{"step", k + 1}, {"verified", ok}};
    t << "step " << k + 1 << ": " << (ok ? "verified" : "FAILED");
    if (ok) {
      const WitnessRecord w = sse_witness_action(s.R, s.S);
      sj["witness_passed"] = w.passed();
      sj["image"] = w.image_text;
      sj["target"] = w.target_text;
      t << ", e carried: " << yes(w.passed()) << " (" << w.image_text << " vs " << w.target_text << ")";
      all = all && w.passed();
    }
    t << "\n";
    all = all && ok;
    steps.push_back(std::move(sj));
  }
  const PairInvariant first = e_invariant(chain.matrices.front()), last = e_invariant(chain.matrices.back());
  const PairComparison ends = pair_equiv(first, last);
  const std::vector<Integer> ca = counts(chain.matrices.front()), cb = counts(chain.matrices.back());

  Json j = header("sse verify");
  j["steps"] = std::move(steps);
  j["endpoints_e_pair"] = Json{{"left", first.to_string()}, {"right", last.to_string()}, {"verdict", to_string(ends.verdict)}};
  j["periodic_counts_agree"] = ca == cb;
  j["verified"] = all;
  t << "endpoints e-pair: " << to_string(ends.verdict) << " (" << first.to_string() << " vs " << last.to_string() << ")\n"
    << "periodic counts n = 1.." << kCountHorizon << " agree: " << yes(ca == cb) << "\n"
    << "chain: " << (all ? "verified" : "FAILED") << "\n";
  emit(c, j, t.str());
  return all ? kOk : kNegative;
}

int cmd_sse_random(const Context& c, const std::string& path, std::size_t steps, std::uint64_t seed, const std::string& outfile) {
  const io::MatrixFile f = io::read_matrix(path);
  const SseChain chain = random_sse_chain(f.matrix, steps, seed);
  Json file = io::chain_to_json(chain);
  if (!outfile.empty()) io::write_file(outfile, file.dump() + "\n");

  Json j = header("sse random");
  j["seed"] = seed;
  j["matrices"] = file["matrices"];
  j["steps"] = file["steps"];

  std::ostringstream t;
  t << "seed: " << seed << "\n";
  for (std::size_t k = 0; k < chain.matrices.size(); ++k) {
    t << "A" << k << ":\n";
    print_matrix(t, chain.matrices[k]);
    if (k < chain.steps.size()) {
      t << "R" << k + 1 << ":\n";
      print_matrix(t, chain.steps[k].R);
      t << "S" << k + 1 << ":\n";
      print_matrix(t, chain.steps[k].S);
    }
  }
  if (!outfile.empty()) t << "wrote " << outfile << "\n";
  emit(c, j, t.str());
  return kOk;
}

int cmd_se_verify(const Context& c, const std::vector<std::string>& paths, unsigned long ell) {
  const IntMatrix A = io::read_matrix(paths[0]).matrix, B = io::read_matrix(paths[1]).matrix;
  const IntMatrix R = io::read_matrix(paths[2]).matrix, S = io::read_matrix(paths[3]).matrix;
  const bool ok = verify_se(A, B, R, S, ell);
  Json j = header("se verify");
  j["ell"] = ell;
  j["verified"] = ok;
  std::ostringstream t;
  t << "shift equivalence (ell = " << ell << "): " << (ok ? "verified" : "FAILED") << "\n";
  bool passed = ok;
  if (ok) {
    const WitnessRecord w = se_witness_action(R, S, ell, A, B);
    j["witness"] = Json{{"identity_holds", w.identity_holds},
                        {"maps_well_defined", w.maps_well_defined},
                        {"maps_isomorphisms", w.maps_isomorphisms},
                        {"carries_e", w.carries_e},
                        {"image", w.image_text},
                        {"target", w.target_text}};
    t << "tensor identity: " << yes(w.identity_holds) << "\nm_S (x) m_{R^t} isomorphism: " << yes(w.maps_isomorphisms)
      << "\nimage of e_A: " << w.image_text << "\ne_B: " << w.target_text << "\ncarries e_A to e_B: " << yes(w.carries_e)
      << "\n";
    passed = w.passed();
  } else {
    j["witness"] = nullptr;
  }
  j["passed"] = passed;
  emit(c, j, t.str());
  return passed ? kOk : kNegative;
}

int cmd_parry(const Context& c, const std::string& path, const std::string& word, std::size_t check) {
  const io::MatrixFile f = io::read_matrix(path);
  const IntMatrix& A = f.matrix;
  Json j = header("parry");
  j["name"] = f.name;
  std::ostringstream t;
  if (!word.empty()) {
    const Word w = io::parse_word(word, A.rows());
    const CylinderMeasure m = parry_cylinder(A, w);
    j["word"] = to_string(w);
    j["admissible"] = m.admissible;
    j["measure"] = m.value;
    t << "mu[" << to_string(w) << "] = " << fmt(m.value) << (m.admissible ? "" : " (empty cylinder)") << "\n";
    emit(c, j, t.str());
    return kOk;
  }
  const ParryReport r = parry_consistency(A, check, c.tol);
  j["length"] = r.length;
  j["word_count"] = r.word_count;
  j["total"] = r.total;
  j["total_error"] = r.total_error;
  j["right_error"] = r.right_error;
  j["left_error"] = r.left_error;
  j["tol"] = r.tol;
  j["passed"] = r.passed();
  t << "words of length " << r.length << ": " << r.word_count << "\ntotal: " << fmt(r.total)
    << "\n|total - 1|: " << fmt(r.total_error) << "\nright additivity error: " << fmt(r.right_error)
    << "\nleft additivity error: " << fmt(r.left_error) << "\ntolerance: " << fmt(r.tol)
    << "\nparry: " << (r.passed() ? "passed" : "FAILED") << "\n";
  emit(c, j, t.str());
  return r.passed() ? kOk : kNegative;
}

int cmd_kms(const Context& c, const std::string& path, std::optional<std::size_t> n_max) {
  const io::MatrixFile f = io::read_matrix(path);
  const MarkovShiftSpec s = analyze(f.matrix);
  if (!s.aperiodic) throw std::invalid_argument("kms: matrix is not aperiodic");
  const std::size_t top = n_max ? *n_max : std::max<std::size_t>(*s.n0, kCountHorizon);
  const KmsReport r = kms_verify(f.matrix, top, c.tol);
  const PerronData pd = perron(f.matrix);

  Json j = header("kms");
  j["name"] = f.name;
  j["beta"] = pd.beta;
  j["inverse_temperature"] = std::log(pd.beta);
  j["n0"] = r.n0;
  j["n_max"] = r.n_max;
  j["symmetric"] = r.symmetric;
  j["tol"] = r.tol;
  j["max_error"] = r.max_error();
  j["checks"] = Json::array();
  for (const auto& k : r.checks) j["checks"].push_back(Json{{"name", k.name}, {"n", k.n}, {"error", k.error}});
  j["passed"] = r.passed();
  j["warnings"] = warnings_json(s);

  std::ostringstream t;
  t << "beta: " << fmt(pd.beta) << "\ninverse temperature log beta: " << fmt(std::log(pd.beta)) << "\nn = " << r.n0
    << ".." << r.n_max << "\n";
  std::vector<std::string> names;
  for (const auto& k : r.checks)
    if (std::find(names.begin(), names.end(), k.name) == names.end()) names.push_back(k.name);
  for (const auto& name : names) {
    double worst = 0;
    for (const auto& k : r.checks)
      if (k.name == name) worst = std::max(worst, k.error);
    t << "  " << name << ": max error " << fmt(worst) << "\n";
  }
  if (!r.symmetric) t << "transposed total skipped: A is not symmetric\n";
  t << "kms: " << (r.passed() ? "passed" : "FAILED") << "\n";
  print_warnings(t, s);
  emit(c, j, t.str());
  return r.passed() ? kOk : kNegative;
}

int cmd_entropy(const Context& c, const std::string& path) {
  const io::MatrixFile f = io::read_matrix(path);
  const PerronData pd = perron(f.matrix);
  Json j = header("entropy");
  j["name"] = f.name;
  j["beta"] = pd.beta;
  j["entropy"] = std::log(pd.beta);
  j["residual"] = pd.residual;
  j["a"] = pd.a;
  j["b"] = pd.b;
  emit(c, j, "beta: " + fmt(pd.beta) + "\nentropy: " + fmt(std::log(pd.beta)) + "\n");
  return kOk;
}

int cmd_conjugacy_verify(const Context& c, const std::string& pphi, const std::string& ppsi, std::size_t lag,
                         std::size_t period) {
  const BlockMap phi = io::read_block_map(pphi), psi = io::read_block_map(ppsi);
  const LagReport r = verify_lag_conjugacy(phi, psi, lag, period);
  Json j = header("conjugacy verify");
  j["lag"] = lag;
  j["period"] = period;
  j["points_checked"] = r.points_checked;
  j["passed"] = r.passed;
  j["counterexample"] = r.passed ? Json(nullptr) : Json(r.counterexample);
  std::ostringstream t;
  t << "periodic points checked: " << r.points_checked << "\n";
  if (!r.passed) t << "counterexample: " << r.counterexample << "\n";
  t << "conjugacy with lag 2K = " << 2 * lag << ": " << (r.passed ? "verified" : "FAILED") << "\n";
  emit(c, j, t.str());
  return r.passed ? kOk : kNegative;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("SHIFTLAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  const std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw io::InputError("SHIFTLAB_SEED: expected a nonnegative integer, got \"" + s + "\"");
  try {
    return std::stoull(s);
  } catch (const std::out_of_range&) {
    throw io::InputError("SHIFTLAB_SEED: value out of range");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants, recodings and spectral checks for shifts of finite type", "shiftlab"};
  app.require_subcommand(1);
  Context ctx;
  ctx.out = &out;
  app.add_flag("--json", ctx.json, "Machine-readable output");
  app.add_option("--tol", ctx.tol, "Tolerance for spectral checks")->check(CLI::PositiveNumber);

  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  std::string a, b, prefix, word, outfile;
  std::vector<std::string> se_paths;
  std::size_t steps = 1, check = 0, lag = 0, period = 6, n_max = 0;
  unsigned long ell = 1;
  std::uint64_t seed = 0;

  CLI::App* analyze_cmd = sub(&app, "analyze", "Structural flags of a matrix");
  analyze_cmd->add_option("A", a, "Matrix file")->required();
  CLI::App* invariant_cmd = sub(&app, "invariant", "All invariants of a matrix");
  invariant_cmd->add_option("A", a, "Matrix file")->required();
  CLI::App* compare_cmd = sub(&app, "compare", "Compare the invariants of two matrices");
  compare_cmd->add_option("A", a, "Matrix file")->required();
  compare_cmd->add_option("B", b, "Matrix file")->required();
  CLI::App* bf_cmd = sub(&app, "bf", "Bowen-Franks group and det(I - A)");
  bf_cmd->add_option("A", a, "Matrix file")->required();
  CLI::App* k0_cmd = sub(&app, "k0", "K0 group with the class of the unit");
  k0_cmd->add_option("A", a, "Matrix file")->required();
  CLI::App* kunneth_cmd = sub(&app, "kunneth", "Kunneth iso types of the tensor product algebra");
  kunneth_cmd->add_option("A", a, "Matrix file")->required();
  CLI::App* edge_cmd = sub(&app, "edge-graph", "Edge graph A_G with A = RS, A_G = SR; writes three matrix files");
  edge_cmd->add_option("A", a, "Matrix file")->required();
  edge_cmd->add_option("--prefix", prefix, "Output prefix (default: <A without extension>.edge)");

  CLI::App* sse_cmd = sub(&app, "sse", "Strong shift equivalence chains");
  sse_cmd->require_subcommand(1);
  CLI::App* sse_verify = sub(sse_cmd, "verify", "Verify a chain file");
  sse_verify->add_option("chain", a, "Chain file")->required();
  CLI::App* sse_random = sub(sse_cmd, "random", "Random chain of state splittings and amalgamations");
  sse_random->add_option("A", a, "Matrix file")->required();
  sse_random->add_option("--steps", steps, "Number of steps")->check(CLI::NonNegativeNumber);
  CLI::Option* seed_opt = sse_random->add_option("--seed", seed, "Seed (default: $SHIFTLAB_SEED or 0)");
  sse_random->add_option("--out", outfile, "Also write the chain file here");

  CLI::App* se_cmd = sub(&app, "se", "Shift equivalence");
  se_cmd->require_subcommand(1);
  CLI::App* se_verify = sub(se_cmd, "verify", "Verify AR = RB, SA = BS, A^ell = RS, B^ell = SR");
  se_verify->add_option("files", se_paths, "A B R S")->required()->expected(4);
  se_verify->add_option("--ell", ell, "Lag")->check(CLI::PositiveNumber);

  CLI::App* parry_cmd = sub(&app, "parry", "Parry measure of a cylinder or a consistency check");
  parry_cmd->add_option("A", a, "Matrix file")->required();
  CLI::Option* word_opt = parry_cmd->add_option("--word", word, "Word over 1..N");
  CLI::Option* check_opt = parry_cmd->add_option("--check", check, "Check all words of length L")->check(CLI::PositiveNumber);
  word_opt->excludes(check_opt);

  CLI::App* kms_cmd = sub(&app, "kms", "KMS value identities");
  kms_cmd->add_option("A", a, "Matrix file")->required();
  CLI::Option* nmax_opt = kms_cmd->add_option("--nmax", n_max, "Largest n (default: max(n0, 8))");

  CLI::App* entropy_cmd = sub(&app, "entropy", "Perron eigenvalue and topological entropy");
  entropy_cmd->add_option("A", a, "Matrix file")->required();

  CLI::App* conj_cmd = sub(&app, "conjugacy", "Sliding block codes");
  conj_cmd->require_subcommand(1);
  CLI::App* conj_verify = sub(conj_cmd, "verify", "Check Psi Phi = sigma^{2K} and Phi Psi = sigma^{2K} on periodic points");
  conj_verify->add_option("phi", a, "Block map file A -> B")->required();
  conj_verify->add_option("psi", b, "Block map file B -> A")->required();
  conj_verify->add_option("--lag", lag, "K");
  conj_verify->add_option("--period", period, "Largest period P")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(ctx, a);
    if (*invariant_cmd) return cmd_invariant(ctx, a);
    if (*compare_cmd) return cmd_compare(ctx, a, b);
    if (*bf_cmd) return cmd_bf(ctx, a);
    if (*k0_cmd) return cmd_k0(ctx, a);
    if (*kunneth_cmd) return cmd_kunneth(ctx, a);
    if (*edge_cmd) return cmd_edge_graph(ctx, a, prefix);
    if (*sse_verify) return cmd_sse_verify(ctx, a);
    if (*sse_random) return cmd_sse_random(ctx, a, steps, seed_opt->count() ? seed : default_seed(), outfile);
    if (*se_verify) return cmd_se_verify(ctx, se_paths, ell);
    if (*parry_cmd && !word_opt->count() && !check_opt->count())
      throw io::InputError("parry: give --word or --check");
    if (*parry_cmd) return cmd_parry(ctx, a, word_opt->count() ? word : std::string(), check);
    if (*kms_cmd) return cmd_kms(ctx, a, nmax_opt->count() ? std::optional<std::size_t>(n_max) : std::nullopt);
    if (*entropy_cmd) return cmd_entropy(ctx, a);
    if (*conj_verify) return cmd_conjugacy_verify(ctx, a, b, lag, period);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << "error: no command\n";
  return kInputError;
}

}  // namespace shiftlab
