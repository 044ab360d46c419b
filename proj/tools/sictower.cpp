#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "sictower/alignment.hpp"
#include "sictower/entangle.hpp"
#include "sictower/fiducial_io.hpp"
#include "sictower/frames.hpp"
#include "sictower/mub.hpp"
#include "sictower/symmetry.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace sictower;

constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

// Exit codes: 0 success/aligned, 1 negative scientific result, 2 invalid
// input, 3 internal error.
constexpr int kOk = 0, kNegative = 1, kInvalid = 2, kInternal = 3;

double default_tolerance() {
  if (const char* env = std::getenv("SICTOWER_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 1e-8;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  char c;
  while (in.get(c)) {
    h ^= std::uint64_t(static_cast<unsigned char>(c));
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const SymplecticMatrix& m) {
  return json::array({json::array({m.alpha.value, m.beta.value}),
                      json::array({m.gamma.value, m.delta.value})});
}

json spectrum_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json report_header(const std::string& command) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["tool"] = "sictower";
  r["version"] = kVersion;
  r["command"] = command;
  return r;
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << report.dump(2) << "\n";
  }
}

Fiducial load_verified(const std::string& path, double equi_tol) {
  Fiducial f = read_fiducial_file(path);
  f.components.normalize();
  VerificationReport v = sic_verify(f, equi_tol, 10 * equi_tol);
  if (!v.pass)
    throw std::runtime_error(path + " is not a SIC fiducial (equiangularity " +
                             std::to_string(v.equiangularity_residual) + ")");
  return f;
}

int cmd_find(std::int64_t d, int restarts, unsigned seed, double tol,
             bool restrict_zauner, const std::string& out_path) {
  FindOptions opts;
  opts.restarts = restarts;
  opts.rng_seed = seed;
  opts.tolerance = tol;
  opts.restrict_zauner = restrict_zauner;
  FindResult res = find_fiducial(d, opts);
  std::cerr << "dim " << d << ": residual " << res.residual << " after "
            << res.restarts_used << " restart(s)\n";
  if (!res.converged) {
    std::cerr << "no fiducial found at tolerance " << tol << "\n";
    return kNegative;
  }
  if (out_path.empty())
    write_fiducial(std::cout, res.fiducial);
  else
    write_fiducial_file(out_path, res.fiducial);
  return kOk;
}

int cmd_verify(const std::string& path, double tol,
               const std::string& out_path) {
  Fiducial f = read_fiducial_file(path);
  f.components.normalize();
  VerificationReport v = sic_verify(f, tol, 10 * tol);
  json r = report_header("verify");
  r["input"] = {{"path", path}, {"digest", file_digest(path)},
                {"dim", f.dim}, {"label", f.label}};
  r["tolerance"] = {{"equiangularity", tol}, {"resolution", 10 * tol}};
  r["equiangularity_residual"] = v.equiangularity_residual;
  r["resolution_residual"] = v.resolution_residual;
  r["pass"] = v.pass;
  emit(r, out_path);
  return v.pass ? kOk : kNegative;
}

const char* verdict_name(AlignmentVerdict v) {
  switch (v) {
    case AlignmentVerdict::aligned: return "aligned";
    case AlignmentVerdict::inconclusive: return "inconclusive";
    default: return "not aligned";
  }
}

int cmd_align(const std::string& small_path, const std::string& big_path,
              double tol, const std::string& out_path) {
  json r = report_header("align");
  Fiducial small = load_verified(small_path, 1e-9);
  Fiducial big = load_verified(big_path, 1e-9);
  r["inputs"] = {{"small",
                  {{"path", small_path}, {"digest", file_digest(small_path)},
                   {"dim", small.dim}}},
                 {"big",
                  {{"path", big_path}, {"digest", file_digest(big_path)},
                   {"dim", big.dim}}}};
  r["tolerance"] = tol;

  AlignmentReport rep = align(small, big, tol);
  json a;
  a["d"] = rep.d;
  a["N"] = rep.N;
  a["parity_of_d"] = rep.d_is_odd ? "odd" : "even";
  a["obs1_residual"] = rep.obs1_residual;
  a["obs2_residual"] = rep.obs2_residual;
  if (rep.M) a["M"] = to_json(*rep.M);
  json mins = json::array();
  for (const SymplecticMatrix& m : rep.minimizers) mins.push_back(to_json(m));
  a["obs2_minimizers"] = mins;
  a["small_candidate"] = rep.small_candidate;
  a["big_candidate"] = rep.big_candidate;
  a["verdict"] = verdict_name(rep.verdict);
  r["alignment"] = a;

  bool aligned = rep.verdict == AlignmentVerdict::aligned;
  if (!rep.d_is_odd) {
    r["theorems"] = "skipped: even d";
  } else if (!aligned) {
    r["theorems"] = "skipped: not aligned";
  } else {
    const std::int64_t d = rep.d;
    OverlapTable theta = overlap_table(rep.small_choice);
    json th;

    Theorem1Result t1 = check_theorem1(rep.big_choice, d);
    th["reduced_density_small_factor"] = {
        {"residual", t1.residual},
        {"rank", t1.rank},
        {"spectrum", spectrum_json(t1.spectrum)},
        {"tolerance", tol}};

    Theorem2Result t2 = check_theorem2(rep.big_choice, theta, *rep.M);
    th["reduced_density_large_factor"] = {
        {"residual", t2.residual},
        {"m_prime", to_json(t2.m_prime)},
        {"scale_sign", t2.scale_sign},
        {"parity_spectrum", spectrum_json(t2.parity_spectrum)},
        {"spectrum", spectrum_json(t2.density_spectrum)},
        {"tolerance", tol}};

    ProjectorPair pp = build_projectors(rep.big_choice, d, theta, t2.m_prime);
    th["projectors"] = {{"rank1", pp.rank1},
                        {"rank2", pp.rank2},
                        {"idempotency1", pp.idempotency1},
                        {"idempotency2", pp.idempotency2},
                        {"tensor_residual1", pp.tensor_residual1},
                        {"tensor_residual2", pp.tensor_residual2},
                        {"fiducial_expectation1", pp.fiducial_expectation1},
                        {"fiducial_expectation2", pp.fiducial_expectation2},
                        {"tolerance", tol}};

    MultipletCounts mc = orbit_multiplets(rep.big_choice, d);
    th["multiplets"] = {{"pi1_count", mc.pi1_count},
                        {"pi2_count", mc.pi2_count}};

    json etfs = json::array();
    auto fams = etf_families(d);
    for (std::int64_t stride : {d - 2, d}) {
      const EtfParams& want = stride == d - 2 ? fams[1] : fams[2];
      EtfCertificate cert = certify_etf(extract_subset(rep.big_choice, stride),
                                        want);
      etfs.push_back({{"stride", stride},
                      {"m", cert.params.m},
                      {"n", cert.params.n},
                      {"coherence_sq", cert.params.coherence_sq},
                      {"rank", cert.rank},
                      {"equiangularity_residual", cert.equiangularity_residual},
                      {"tightness_residual", cert.tightness_residual},
                      {"pass", cert.pass},
                      {"tolerance", 1e-8}});
    }
    th["etf_certificates"] = etfs;

    if (is_prime(d - 2)) {
      MubSet mset = mub_from_aligned_sic(rep.big_choice, d);
      MubReport mrep = mub_verify(mset);
      th["mub"] = {{"p", mset.p},
                   {"bases", mset.bases.size()},
                   {"projector_defect", mset.projector_defect},
                   {"orthonormality_residual", mrep.orthonormality_residual},
                   {"unbiasedness_residual", mrep.unbiasedness_residual},
                   {"pass", mrep.pass},
                   {"tolerance", {{"orthonormality", 1e-9},
                                  {"unbiasedness", 1e-7}}}};
    } else {
      th["mub"] = "skipped: d-2 not prime";
    }

    Theorem5Result t5 = check_theorem5(rep.big_choice, d);
    th["extra_symmetry"] = {{"f_b", to_json(t5.f_b)},
                            {"fix_residual", t5.fix_residual},
                            {"permutation_residual", t5.permutation_residual},
                            {"permutation_order", t5.permutation_order},
                            {"tolerance", tol}};
    r["theorems"] = th;
  }
  r["verdict"] = verdict_name(rep.verdict);
  emit(r, out_path);
  return aligned ? kOk : kNegative;
}

int cmd_tower(std::int64_t start, int rungs, bool as_json,
              const std::string& out_path) {
  json dims = json::array();
  std::int64_t d = start;
  std::int64_t disc = next_rung(start).discriminant;
  dims.push_back(d);
  for (int k = 1; k < rungs; ++k) {
    TowerStep step = next_rung(d);
    d = step.next;
    dims.push_back(d);
  }
  if (as_json || !out_path.empty()) {
    json r = report_header("tower");
    r["start"] = start;
    r["rungs"] = rungs;
    r["dimensions"] = dims;
    r["discriminant"] = disc;
    emit(r, out_path);
  } else {
    std::cout << "D=" << disc << ":";
    for (const auto& v : dims) std::cout << " " << v.get<std::int64_t>();
    std::cout << "\n";
  }
  return kOk;
}

int cmd_mub(std::int64_t p, const std::string& big_path, std::int64_t d,
            const std::string& out_path) {
  json r = report_header("mub");
  MubSet mset;
  if (!big_path.empty()) {
    Fiducial big = load_verified(big_path, 1e-9);
    r["input"] = {{"path", big_path}, {"digest", file_digest(big_path)}};
    mset = mub_from_aligned_sic(big, d);
  } else {
    // Direct construction from the line operators.
    auto ws = wootters_projectors(p);
    mset.p = p;
    mset.bases.assign(p + 1, {});
    for (const auto& lp : ws) {
      Eigen::SelfAdjointEigenSolver<Mat> es(lp.w);
      mset.projector_defect = std::max(
          mset.projector_defect, std::abs(es.eigenvalues()(p - 1) - 1.0));
      mset.bases[lp.line.z].push_back(es.eigenvectors().col(p - 1));
    }
  }
  MubReport rep = mub_verify(mset);
  r["p"] = mset.p;
  r["bases"] = mset.bases.size();
  r["projector_defect"] = mset.projector_defect;
  r["orthonormality_residual"] = rep.orthonormality_residual;
  r["unbiasedness_residual"] = rep.unbiasedness_residual;
  r["tolerance"] = {{"orthonormality", 1e-9}, {"unbiasedness", 1e-7}};
  r["pass"] = rep.pass;
  emit(r, out_path);
  return rep.pass ? kOk : kNegative;
}

int cmd_symmetry(const std::string& path, double tol,
                 const std::string& out_path) {
  Fiducial f = load_verified(path, 1e-9);
  SymmetryReport rep = stabilizer_order(f, tol);
  json r = report_header("symmetry");
  r["input"] = {{"path", path}, {"digest", file_digest(path)},
                {"dim", f.dim}};
  r["tolerance"] = tol;
  r["unitary_order"] = rep.unitary_order;
  r["extended_order"] = rep.extended_order;
  r["has_order3_trace_minus1"] = rep.has_order3_trace_minus1;
  r["zauner_flavor"] = std::string(1, rep.zauner_flavor);
  r["subspace"] = rep.largest_subspace ? "largest" : "smaller";
  json ws = json::array();
  for (const SymmetryWitness& w : rep.witnesses)
    ws.push_back({{"matrix", to_json(w.matrix)},
                  {"antiunitary", w.antiunitary}});
  r["witnesses"] = ws;
  emit(r, out_path);
  return kOk;
}

int cmd_etf(const std::string& big_path, double tol,
            const std::string& out_path) {
  Fiducial big = load_verified(big_path, 1e-9);
  const std::int64_t N = big.dim;
  std::int64_t d = 0;
  for (std::int64_t c = 4; c * (c - 2) <= N; ++c)
    if (c * (c - 2) == N) d = c;
  if (d == 0)
    throw std::runtime_error("dimension is not of the form d(d-2)");
  json r = report_header("etf");
  r["input"] = {{"path", big_path}, {"digest", file_digest(big_path)},
                {"dim", N}};
  r["tolerance"] = tol;
  json fams = json::array();
  for (const EtfParams& fp : etf_families(d))
    fams.push_back({{"m", fp.m}, {"n", fp.n},
                    {"coherence_sq", fp.coherence_sq}});
  r["families"] = fams;
  bool all_pass = true;
  json certs = json::array();
  auto families = etf_families(d);
  for (std::int64_t stride : {d - 2, d}) {
    const EtfParams& want = stride == d - 2 ? families[1] : families[2];
    EtfCertificate cert = certify_etf(extract_subset(big, stride), want);
    all_pass = all_pass && cert.pass;
    certs.push_back({{"stride", stride},
                     {"m", cert.params.m},
                     {"n", cert.params.n},
                     {"rank", cert.rank},
                     {"equiangularity_residual", cert.equiangularity_residual},
                     {"tightness_residual", cert.tightness_residual},
                     {"pass", cert.pass}});
  }
  r["certificates"] = certs;
  r["pass"] = all_pass;
  emit(r, out_path);
  return all_pass ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl-Heisenberg SIC toolkit: search, alignment, and frame "
               "certification"};
  app.require_subcommand(1);
  double tol = default_tolerance();

  auto* find = app.add_subcommand("find", "search for a SIC fiducial");
  std::int64_t find_dim = 0;
  int find_restarts = 64;
  unsigned find_seed = 1;
  double find_tol = 1e-12;
  bool find_zauner = false;
  std::string find_out;
  find->add_option("--dim", find_dim, "dimension")->required()
      ->check(CLI::Range(std::int64_t(2), std::int64_t(64)));
  find->add_option("--seeds,--restarts", find_restarts, "random restarts");
  find->add_option("--seed", find_seed, "RNG seed");
  find->add_option("--tolerance", find_tol, "convergence tolerance");
  find->add_flag("--restrict-zauner", find_zauner,
                 "search inside the largest Zauner subspace");
  find->add_option("--out,-o", find_out, "output fiducial file");

  auto* verify = app.add_subcommand("verify", "verify a fiducial file");
  std::string verify_in, verify_out;
  double verify_tol = 1e-10;
  verify->add_option("--in,-i", verify_in, "fiducial file")->required();
  verify->add_option("--tolerance", verify_tol, "equiangularity tolerance");
  verify->add_option("--out,-o", verify_out, "JSON report path");

  auto* al = app.add_subcommand(
      "align", "full alignment pipeline for a (d, d(d-2)) pair");
  std::string al_small, al_big, al_out;
  al->add_option("--small", al_small, "dimension-d fiducial file")->required();
  al->add_option("--big", al_big, "dimension-d(d-2) fiducial file")->required();
  al->add_option("--tolerance", tol, "phase tolerance");
  al->add_option("--out,-o", al_out, "JSON report path");

  auto* tower = app.add_subcommand("tower", "dimension tower arithmetic");
  std::int64_t tower_start = 0;
  int tower_rungs = 1;
  bool tower_json = false;
  std::string tower_out;
  tower->add_option("--start", tower_start, "first dimension (>= 4)")
      ->required();
  tower->add_option("--rungs", tower_rungs, "number of rungs")
      ->check(CLI::Range(1, 6));
  tower->add_flag("--json", tower_json, "emit JSON");
  tower->add_option("--out,-o", tower_out, "JSON report path");

  auto* mub = app.add_subcommand("mub", "mutually unbiased bases");
  std::int64_t mub_p = 0, mub_d = 0;
  std::string mub_big, mub_out;
  mub->add_option("--p", mub_p, "odd prime (direct construction)");
  mub->add_option("--big", mub_big, "aligned fiducial in dimension d(d-2)");
  mub->add_option("--d", mub_d, "d for the aligned route (p = d-2)");
  mub->add_option("--out,-o", mub_out, "JSON report path");

  auto* sym = app.add_subcommand("symmetry", "stabilizer of a fiducial");
  std::string sym_in, sym_out;
  sym->add_option("--in,-i", sym_in, "fiducial file")->required();
  sym->add_option("--tolerance", tol, "projective fixing tolerance");
  sym->add_option("--out,-o", sym_out, "JSON report path");

  auto* etf = app.add_subcommand("etf", "embedded frame certificates");
  std::string etf_in, etf_out;
  etf->add_option("--big,-i", etf_in, "fiducial in dimension d(d-2)")
      ->required();
  etf->add_option("--tolerance", tol, "certificate tolerance");
  etf->add_option("--out,-o", etf_out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }

  try {
    if (*find)
      return cmd_find(find_dim, find_restarts, find_seed, find_tol,
                      find_zauner, find_out);
    if (*verify) return cmd_verify(verify_in, verify_tol, verify_out);
    if (*al) return cmd_align(al_small, al_big, tol, al_out);
    if (*tower) return cmd_tower(tower_start, tower_rungs, tower_json,
                                 tower_out);
    if (*mub) {
      if (mub_big.empty() && mub_p == 0)
        throw std::invalid_argument("mub needs --p or --big with --d");
      if (!mub_big.empty() && mub_d == 0)
        throw std::invalid_argument("mub --big needs --d");
      return cmd_mub(mub_p, mub_big, mub_d, mub_out);
    }
    if (*sym) return cmd_symmetry(sym_in, tol, sym_out);
    if (*etf) return cmd_etf(etf_in, tol, etf_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::runtime_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
