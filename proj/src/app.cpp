#include "lgk/app.hpp"

#include <filesystem>
#include <fstream>

#include "lgk/tprocedure.hpp"

namespace lgk {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw Error("config: unknown key '" + it.key() + "' in " + where);
  }
}

Coord parse_coord(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    throw Error("config: " + where + " must be an integer triple");
  return Coord{j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

Region parse_region(const json& j, const std::string& where) {
  reject_unknown(j, {"lo", "hi"}, where);
  if (!j.contains("lo") || !j.contains("hi"))
    throw Error("config: " + where + " needs 'lo' and 'hi'");
  return Region(parse_coord(j.at("lo"), where + ".lo"),
                parse_coord(j.at("hi"), where + ".hi"));
}

json check_entry(double residual, double tol) {
  json e;
  e["residual"] = residual;
  e["tol"] = tol;
  e["pass"] = residual < tol;
  return e;
}

json region_json(const Region& r) {
  return json{{"lo", {r.lo[0], r.lo[1], r.lo[2]}},
              {"hi", {r.hi[0], r.hi[1], r.hi[2]}}};
}

constexpr const char* kVersion = "0.1.0";

json report_header(const RunConfig& cfg, const std::string& command) {
  json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["config"] = cfg.echo;
  return j;
}

bool all_pass(const json& checks) {
  for (const auto& [k, v] : checks.items()) {
    if (v.is_object() && v.contains("pass") && !v["pass"].get<bool>())
      return false;
  }
  return true;
}

}  // namespace

RunConfig parse_config(const json& j) {
  reject_unknown(j,
                 {"group", "N", "cutoff", "region", "inner_region", "matter",
                  "couplings", "tol", "seed", "solver", "wilson"},
                 "config");
  RunConfig cfg;

  const std::string g = j.at("group").get<std::string>();
  if (g == "ZN") {
    if (!j.contains("N")) throw Error("config: group ZN needs 'N'");
    cfg.group = make_zn(j.at("N").get<int>());
  } else if (g == "U1") {
    cfg.group = make_u1();
  } else if (g == "SU2") {
    cfg.group = make_su2();
  } else {
    throw Error("config: group must be one of ZN, U1, SU2");
  }

  cfg.cutoff = j.at("cutoff").get<int>();
  if (cfg.cutoff < 0) throw Error("config: cutoff must be >= 0");
  cfg.region = parse_region(j.at("region"), "region");
  if (j.contains("inner_region"))
    cfg.inner_region = parse_region(j.at("inner_region"), "inner_region");

  if (j.contains("matter")) {
    reject_unknown(j.at("matter"), {"enabled", "w"}, "matter");
    cfg.matter_enabled = j.at("matter").value("enabled", false);
    cfg.matter_w = j.at("matter").value("w", 1);
    if (cfg.matter_w < 1) throw Error("config: matter.w must be >= 1");
  }

  if (j.contains("couplings")) {
    const json& c = j.at("couplings");
    reject_unknown(c, {"a", "g", "m", "kernel"}, "couplings");
    cfg.couplings.lattice_spacing = c.value("a", 1.0);
    cfg.couplings.gauge_coupling = c.value("g", 1.0);
    cfg.couplings.mass = c.value("m", 0.0);
    const std::string k = c.value("kernel", "single-component");
    if (k == "single-component")
      cfg.couplings.kernel = HoppingKernel::SingleComponent;
    else if (k == "naive-dirac")
      cfg.couplings.kernel = HoppingKernel::NaiveDirac;
    else
      throw Error("config: kernel must be single-component or naive-dirac");
    if (cfg.couplings.lattice_spacing <= 0 || cfg.couplings.gauge_coupling <= 0)
      throw Error("config: couplings a and g must be positive");
  }

  cfg.tol = j.value("tol", kDefaultTol);
  if (cfg.tol <= 0) throw Error("config: tol must be positive");
  cfg.seed = j.value("seed", std::uint64_t(1));

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    reject_unknown(s, {"mode", "k", "max_iter", "tol"}, "solver");
    const std::string mode = s.value("mode", "dense");
    if (mode == "dense")
      cfg.solver.mode = SolverMode::Dense;
    else if (mode == "lanczos")
      cfg.solver.mode = SolverMode::Lanczos;
    else
      throw Error("config: solver.mode must be dense or lanczos");
    cfg.solver.k = s.value("k", 1);
    cfg.solver.max_iter = s.value("max_iter", 300);
    cfg.solver.tol = s.value("tol", 1e-10);
  }
  cfg.solver.seed = cfg.seed;

  if (j.contains("wilson")) {
    const json& w = j.at("wilson");
    reject_unknown(w, {"plaquette", "steps"}, "wilson");
    if (w.contains("plaquette")) {
      cfg.wilson_plaquette = w.at("plaquette").get<int>();
    } else if (w.contains("steps")) {
      LoopPath loop;
      loop.closed = true;
      for (const auto& s : w.at("steps"))
        loop.steps.emplace_back(s.at(0).get<std::size_t>(), s.at(1).get<int>());
      cfg.wilson_loop_spec = loop;
    } else {
      throw Error("config: wilson needs 'plaquette' or 'steps'");
    }
  }

  cfg.echo = j;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  json j;
  in >> j;
  return parse_config(j);
}

KinematicSpace RunConfig::make_space() const {
  std::optional<MatterSpec> matter;
  if (matter_enabled) matter = MatterSpec{group, matter_w};
  return KinematicSpace(build_lattice(region), group, cutoff, matter);
}

std::string Report::str() const { return body.dump(2) + "\n"; }

void Report::write(const std::string& out_dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream out(fs::path(out_dir) / "report.json");
    out << str();
  }
  if (body.contains("spectrum_csv")) {
    std::ofstream csv(fs::path(out_dir) / "spectrum.csv");
    csv << body["spectrum_csv"].get<std::string>();
  }
}

Report cmd_lattice_info(const RunConfig& cfg) {
  const LatticeGraph graph = build_lattice(cfg.region);
  json j = report_header(cfg, "lattice-info");
  json r;
  r["sites"] = graph.sites().size();
  r["links"] = graph.links().size();
  r["plaquettes"] = graph.plaquettes().size();
  r["envelope_sites"] = envelope(graph, cfg.scoped_region()).size();
  r["inner_links"] = links_meeting(graph, cfg.scoped_region()).size();
  j["results"] = r;
  Report rep;
  rep.body = std::move(j);
  rep.pass = true;
  rep.body["pass"] = rep.pass;
  return rep;
}

Report cmd_sector_dim(const RunConfig& cfg) {
  const KinematicSpace space = cfg.make_space();
  json j = report_header(cfg, "sector-dim");
  json r;
  r["total_dim"] = space.total_dim();
  const Matrix p = gauss_projector(space, cfg.scoped_region());
  const double tr = p.trace().real();
  r["gauss_sector_dim"] = invariant_dim(space, cfg.scoped_region());
  r["projector_trace"] = tr;
  r["projector_idempotency"] =
      check_entry((p * p - p).norm(), std::max(cfg.tol, 1e-8));
  json site_ranks = json::array();
  for (std::size_t x : envelope(space.graph(), cfg.scoped_region())) {
    const Matrix px = gauss_site_projection(space, x);
    site_ranks.push_back(
        {{"site", x}, {"rank", std::llround(px.trace().real())}});
  }
  r["site_ranks"] = site_ranks;
  j["results"] = r;
  Report rep;
  rep.body = std::move(j);
  rep.pass = all_pass(rep.body["results"]);
  rep.body["pass"] = rep.pass;
  return rep;
}

namespace {

std::string spectrum_csv(const RealVector& values, const RealVector& residuals) {
  std::string csv = "index,eigenvalue,residual\n";
  char buf[128];
  for (Index i = 0; i < values.size(); ++i) {
    const double res = residuals.size() > i ? residuals(i) : 0.0;
    std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g\n",
                  static_cast<long long>(i), values(i), res);
    csv += buf;
  }
  return csv;
}

}  // namespace

Report cmd_spectrum(const RunConfig& cfg) {
  const KinematicSpace space = cfg.make_space();
  const Matrix h = hamiltonian(space, cfg.couplings);
  const Matrix p = gauss_projector(space, cfg.scoped_region());

  json j = report_header(cfg, "spectrum");
  json r;
  r["total_dim"] = space.total_dim();
  r["hermiticity"] = check_entry(hermiticity_residual(h), cfg.tol);

  // restricted operator on the Gauss sector
  Eigen::SelfAdjointEigenSolver<Matrix> pes(p);
  std::vector<Index> keep;
  for (Index i = 0; i < pes.eigenvalues().size(); ++i)
    if (pes.eigenvalues()(i) > 0.5) keep.push_back(i);
  Matrix w(space.total_dim(), static_cast<Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    w.col(static_cast<Index>(i)) = pes.eigenvectors().col(keep[i]);
  const Matrix h_red = w.adjoint() * h * w;

  r["sector_dim"] = static_cast<Index>(keep.size());
  const Spectrum red = eigs_dense(h_red);
  const Index k_report = std::min<Index>(cfg.solver.k, red.values.size());
  r["reduced_lowest"] = json::array();
  for (Index i = 0; i < k_report; ++i) r["reduced_lowest"].push_back(red.values(i));

  Spectrum full;
  if (cfg.solver.mode == SolverMode::Dense) {
    full = eigs_dense(h);
    full.residuals = RealVector::Zero(full.values.size());
  } else {
    full = eigs(h, cfg.solver);
  }
  r["full_lowest"] = json::array();
  for (Index i = 0; i < std::min<Index>(cfg.solver.k, full.values.size()); ++i)
    r["full_lowest"].push_back(full.values(i));
  if (cfg.solver.mode == SolverMode::Lanczos) {
    // ground value of the projected operator, for sector cross-checks
    SpectrumRequest req = cfg.solver;
    req.k = 1;
    const Matrix hp = p * h * p;
    const Spectrum proj = eigs_lanczos(
        [&hp](const Vector& x) { return (hp * x).eval(); }, space.total_dim(), req);
    r["projected_ground_lanczos"] = proj.values(0);
  }

  j["spectrum_csv"] = spectrum_csv(red.values, red.residuals);
  j["results"] = r;
  Report rep;
  rep.body = std::move(j);
  rep.pass = all_pass(rep.body["results"]);
  rep.body["pass"] = rep.pass;
  return rep;
}

Report cmd_wilson(const RunConfig& cfg) {
  const KinematicSpace space = cfg.make_space();
  LoopPath loop;
  if (cfg.wilson_plaquette) {
    const auto& ps = space.graph().plaquettes();
    const int idx = *cfg.wilson_plaquette;
    if (idx < 0 || static_cast<std::size_t>(idx) >= ps.size())
      throw Error("cmd_wilson: plaquette index out of range");
    loop = loop_from_plaquette(space.graph(), ps[static_cast<std::size_t>(idx)]);
  } else if (cfg.wilson_loop_spec) {
    loop = *cfg.wilson_loop_spec;
    validate_path(space.graph(), loop);
  } else {
    throw Error("cmd_wilson: config lacks a wilson loop specification");
  }

  const Matrix wop = wilson_loop(space, loop);
  const Matrix h = hamiltonian(space, cfg.couplings);
  const Matrix p = gauss_projector(space, cfg.scoped_region());

  Eigen::SelfAdjointEigenSolver<Matrix> pes(p);
  std::vector<Index> keep;
  for (Index i = 0; i < pes.eigenvalues().size(); ++i)
    if (pes.eigenvalues()(i) > 0.5) keep.push_back(i);
  Matrix w(space.total_dim(), static_cast<Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    w.col(static_cast<Index>(i)) = pes.eigenvectors().col(keep[i]);

  const Spectrum red = eigs_dense(w.adjoint() * h * w, true);
  const Vector ground = w * red.vectors.col(0);
  const cplx val = expectation(ground, wop);

  json j = report_header(cfg, "wilson");
  json r;
  r["loop_length"] = loop.steps.size();
  r["ground_energy"] = red.values(0);
  r["wilson_expectation_re"] = val.real();
  r["wilson_expectation_im"] = val.imag();
  const auto gi = is_gauge_invariant(space, wop, cfg.scoped_region(), cfg.tol);
  r["gauge_invariance"] = check_entry(gi.max_residual, cfg.tol);
  j["results"] = r;
  Report rep;
  rep.body = std::move(j);
  rep.pass = all_pass(rep.body["results"]);
  rep.body["pass"] = rep.pass;
  return rep;
}

Report cmd_tprocedure_report(const RunConfig& cfg) {
  const KinematicSpace space = cfg.make_space();
  const Index d = space.total_dim();
  json j = report_header(cfg, "tprocedure-report");
  json r;

  AlgebraOptions opts;
  opts.max_ambient = std::max<Index>(opts.max_ambient, d);
  opts.max_opspace = std::max<Index>(opts.max_opspace, d * d);
  opts.seed = cfg.seed;
  if (d > 20)
    throw Error("cmd_tprocedure_report: configured space too large (dim > 20)");

  const MatrixAlgebra f = full_matrix_algebra(d, opts);
  const ConstraintSet c = gauge_constraints(space, cfg.region);
  const ConstraintData data = constraint_data(f, c);

  r["ambient_dim"] = d;
  r["dirac_rank"] = data.dirac_rank;
  r["dim_N"] = data.N.rank();
  r["dim_D"] = data.D.rank();
  r["dim_O"] = data.O.rank();
  r["dim_R"] = data.R.rank();
  const Index expected_o = data.dirac_rank * data.dirac_rank +
                           (d - data.dirac_rank) * (d - data.dirac_rank);
  r["dim_O_identity"] = json{{"expected", expected_o},
                             {"actual", data.O.rank()},
                             {"pass", expected_o == data.O.rank()}};
  r["checks"] = json{
      {"left_ideal", check_entry(data.checks.left_ideal, 1e-9)},
      {"d_two_sided_ideal", check_entry(data.checks.d_two_sided_ideal, 1e-9)},
      {"d_in_o", check_entry(data.checks.d_in_o, 1e-9)},
      {"o_multiplier_equality",
       check_entry(data.checks.o_multiplier_equality, 1e-9)},
      {"o_block_offdiag", check_entry(data.checks.o_block_offdiag, 1e-9)},
      {"traditional_in_o", check_entry(data.checks.traditional_in_o, 1e-9)},
  };
  r["r_rank_consistent"] = data.checks.r_rank_consistent;

  // traditional observables compress to the same physical algebra
  const OperatorSpan trad = traditional_observables(f, c);
  std::vector<Matrix> trad_compressed;
  for (Index i = 0; i < trad.rank(); ++i)
    trad_compressed.push_back(data.dirac_isometry.adjoint() * trad.op(i) *
                              data.dirac_isometry);
  const OperatorSpan trad_r =
      OperatorSpan::from_matrices(data.dirac_rank, trad_compressed);
  r["dim_traditional"] = trad.rank();
  r["traditional_compression_equality"] =
      check_entry(trad_r.equality_residual(data.R), 1e-9);

  // subsystem: diagonal subalgebra inside the full algebra (abelian
  // constraints are diagonal, so they lie inside it)
  if (space.spec().kind != GroupKind::SU2) {
    const SubsystemReport sub = subsystem_check(diagonal_algebra(d, opts), f, c);
    r["subsystem"] = json{{"n", check_entry(sub.n_residual, 1e-9)},
                          {"d", check_entry(sub.d_residual, 1e-9)},
                          {"o", check_entry(sub.o_residual, 1e-9)},
                          {"pass", sub.pass}};
  }

  if (cfg.inner_region && space.spec().kind != GroupKind::SU2 &&
      !space.has_matter()) {
    const NestingReport nest =
        nesting_check(space, *cfg.inner_region, cfg.region, opts);
    r["nesting"] = json{
        {"constraints_consistent", nest.constraints_consistent},
        {"o_isotony", check_entry(nest.o_isotony_residual, 1e-9)},
        {"d_isotony", check_entry(nest.d_isotony_residual, 1e-9)},
        {"dirac_rank_inner", nest.dirac_rank_i},
        {"dirac_rank_outer", nest.dirac_rank_j},
        {"pass", nest.pass}};
  }

  j["results"] = r;
  Report rep;
  rep.body = std::move(j);
  rep.pass = all_pass(rep.body["results"]) &&
             rep.body["results"]["dim_O_identity"]["pass"].get<bool>();
  rep.body["pass"] = rep.pass;
  return rep;
}

Report cmd_verify(const RunConfig& cfg) {
  json j = report_header(cfg, "verify");
  json checks;
  const double tol = cfg.tol;
  Rng rng(cfg.seed);

  const KinematicSpace space = cfg.make_space();
  const LatticeGraph& graph = space.graph();
  const GroupSpec& spec = cfg.group;
  const TruncatedLinkSpace& ls = space.link_space();
  const bool continuous = spec.kind != GroupKind::ZN;

  // lattice: plaquette closure, handshake sum, nested enumeration
  {
    double worst = 0.0;
    for (const Plaquette& p : graph.plaquettes())
      validate_path(graph, loop_from_plaquette(graph, p));
    std::size_t degree_sum = 0;
    for (const Site& s : graph.sites()) {
      auto [out, in] = graph.links_at(s);
      degree_sum += out.size() + in.size();
    }
    if (degree_sum != 2 * graph.links().size()) worst = 1.0;

    // restricting the enumeration to a subregion reproduces its own graph
    const LatticeGraph inner = build_lattice(cfg.scoped_region());
    std::vector<Link> restricted;
    for (const Link& l : graph.links())
      if (cfg.scoped_region().contains(l.source) &&
          cfg.scoped_region().contains(l.target))
        restricted.push_back(l);
    if (restricted.size() != inner.links().size()) worst = 1.0;
    for (std::size_t i = 0; i < restricted.size() && worst == 0.0; ++i)
      if (!(restricted[i].source == inner.links()[i].source &&
            restricted[i].target == inner.links()[i].target))
        worst = 1.0;
    checks["lattice_closure_degree_and_nesting"] = check_entry(worst, 0.5);
  }

  // group: Schur orthogonality through the quadrature rule
  {
    const auto irreps = irreps_up_to(spec, cfg.cutoff);
    const auto quad = haar_quadrature(spec, std::max(cfg.cutoff, 1));
    double worst = 0.0;
    for (const auto& pi : irreps) {
      for (const auto& sg : irreps) {
        Matrix acc = Matrix::Zero(pi.dim * sg.dim, pi.dim * sg.dim);
        for (const auto& [g, wgt] : quad)
          acc += wgt * kron(irrep_matrix(spec, pi, g),
                            irrep_matrix(spec, sg, g).conjugate());
        if (pi.label == sg.label) {
          // <pi_mn, pi_pq> = delta_mp delta_nq / dim
          for (Index m = 0; m < pi.dim; ++m)
            for (Index n = 0; n < sg.dim; ++n)
              for (Index p = 0; p < pi.dim; ++p)
                for (Index q = 0; q < sg.dim; ++q) {
                  const cplx v = acc(m * sg.dim + n, p * sg.dim + q);
                  const double expect = (m == n && p == q) ? 1.0 / pi.dim : 0.0;
                  worst = std::max(worst, std::abs(v - expect));
                }
        } else {
          worst = std::max(worst, acc.cwiseAbs().maxCoeff());
        }
      }
    }
    checks["group_schur_orthogonality"] = check_entry(worst, 1e-9);

    double qworst = 0.0;
    double total = 0.0;
    for (const auto& [g, w] : quad) total += w;
    qworst = std::abs(total - 1.0);
    if (spec.kind == GroupKind::SU2) {
      // coupling-matrix unitarity for the defining times each kept irrep
      for (const auto& pi : irreps) {
        Matrix all((1 + 1) * (pi.label + 1), 0);
        for (int tJ = std::abs(pi.label - 1); tJ <= pi.label + 1; tJ += 2) {
          const Matrix t = clebsch_gordan(1, pi.label, tJ);
          Matrix merged(all.rows(), all.cols() + t.cols());
          merged << all, t;
          all = merged;
        }
        qworst = std::max(
            qworst, (all * all.adjoint() -
                     Matrix::Identity(all.rows(), all.rows()))
                        .norm());
      }
    }
    checks["group_quadrature_and_coupling_unitarity"] = check_entry(qworst, 1e-10);
  }

  // link space: sign contracts and the commutation relation on the interior
  {
    double worst = 0.0;
    const Matrix interior = interior_projection(ls).matrix;
    const auto ys = lie_basis(spec);
    if (continuous) {
      for (int s = 0; s < 10; ++s) {
        const std::size_t r = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(ys.size()) - 1));
        const double t = rng.uniform(-2.0, 2.0);
        const Matrix u = left_translation(ls, exp_element(spec, r, t)).matrix;
        const Matrix pexp = hermitian_phase_exp(
            electric_generator_left(ls, r).matrix, -t);
        worst = std::max(worst, (u - pexp).norm());
        for (Index i = 0; i < spec.defining_dim(); ++i)
          for (Index jj = 0; jj < spec.defining_dim(); ++jj) {
            const Matrix pl = electric_generator_left(ls, r).matrix;
            const Matrix tf = multiplication_op(ls, i, jj).matrix;
            Matrix rhs = Matrix::Zero(ls.dim(), ls.dim());
            for (Index m = 0; m < spec.defining_dim(); ++m)
              rhs += ys[r](i, m) * multiplication_op(ls, m, jj).matrix;
            worst = std::max(worst,
                             ((pl * tf - tf * pl - rhs) * interior).norm());
          }
      }
    }
    // the link ground state is annihilated by every electric generator
    for (std::size_t r = 0; r < ys.size(); ++r) {
      Vector psi0 = Vector::Zero(ls.dim());
      psi0(ls.vacuum_index()) = 1.0;
      worst = std::max(worst,
                       (electric_generator_left(ls, r).matrix * psi0).norm());
    }
    checks["link_commutation_and_exponential_contract"] = check_entry(worst, 1e-8);
  }

  // link space: gauge covariance of the connection components
  {
    double worst = 0.0;
    const Matrix interior = interior_projection(ls).matrix;
    const Index k = spec.defining_dim();
    for (int s = 0; s < 5; ++s) {
      const GroupElement h = random_element(spec, rng);
      const GroupElement gs = random_element(spec, rng);
      const Matrix w = link_gauge_unitary(ls, h, gs).matrix;
      const Matrix hinv = defining_rep(inverse(h));
      const Matrix smat = defining_rep(gs);
      for (Index i = 0; i < k; ++i)
        for (Index jj = 0; jj < k; ++jj) {
          const Matrix lhs =
              w * multiplication_op(ls, i, jj).matrix * w.adjoint();
          Matrix rhs = Matrix::Zero(ls.dim(), ls.dim());
          for (Index n = 0; n < k; ++n)
            for (Index m = 0; m < k; ++m)
              rhs += hinv(i, n) * smat(m, jj) * multiplication_op(ls, n, m).matrix;
          worst = std::max(worst, ((lhs - rhs) * interior).norm());
        }
    }
    checks["link_gauge_covariance"] = check_entry(worst, tol);
  }

  // link space: left and right Casimirs coincide
  {
    const auto ys = lie_basis(spec);
    Matrix cl = Matrix::Zero(ls.dim(), ls.dim());
    Matrix cr = Matrix::Zero(ls.dim(), ls.dim());
    for (std::size_t r = 0; r < ys.size(); ++r) {
      const Matrix pl = electric_generator_left(ls, r).matrix;
      const Matrix pr = electric_generator_right(ls, r).matrix;
      cl += pl * pl;
      cr += pr * pr;
    }
    double worst = (cl - cr).norm();
    worst = std::max(worst, (casimir(ls).matrix - cl).norm());
    checks["link_casimir_left_right"] = check_entry(worst, tol);
  }

  // fermion sector: CAR relations and second-quantization functoriality
  {
    const FockSpace fock = space.has_matter()
                               ? space.fock()
                               : FockSpace(2, MatterSpec{spec, 1});
    double worst = 0.0;
    const Index modes = static_cast<Index>(fock.num_modes());
    for (int s = 0; s < 10; ++s) {
      const Vector f = rng.vector(modes);
      const Vector g = rng.vector(modes);
      const Matrix af = annihilator(fock, f);
      const Matrix ag = annihilator(fock, g);
      const Matrix agd = ag.adjoint();
      const Matrix anti = af * agd + agd * af;
      const cplx ip = f.dot(g);
      worst = std::max(
          worst, (anti - ip * Matrix::Identity(fock.dim(), fock.dim())).norm());
      worst = std::max(worst, (af * ag + ag * af).norm());
    }
    std::vector<GroupElement> g1, g2;
    for (std::size_t x = 0; x < fock.num_sites(); ++x) {
      g1.push_back(random_element(spec, rng));
      g2.push_back(random_element(spec, rng));
    }
    std::vector<GroupElement> g12;
    for (std::size_t x = 0; x < fock.num_sites(); ++x)
      g12.push_back(multiply(g1[x], g2[x]));
    worst = std::max(worst, (matter_gauge_unitary(fock, g12) -
                             matter_gauge_unitary(fock, g1) *
                                 matter_gauge_unitary(fock, g2))
                                .norm());
    if (spec.kind == GroupKind::SU2) {
      // the site generators mirror the lie algebra structure constants
      const Matrix h0 = matter_gauss_generator(fock, 0, 0);
      const Matrix h1 = matter_gauss_generator(fock, 0, 1);
      const Matrix h2 = matter_gauss_generator(fock, 0, 2);
      worst = std::max(
          worst, (h0 * h1 - h1 * h0 + cplx(0, std::sqrt(2.0)) * h2).norm());
    }
    checks["fermion_car_and_functoriality"] = check_entry(worst, 1e-11);
  }

  // gauge action: homomorphism and the invariant product vacuum
  {
    double worst = 0.0;
    const auto env = envelope(graph, cfg.scoped_region());
    for (int s = 0; s < 5; ++s) {
      const GaugeTransformation a = random_gauge_transformation(spec, env, rng);
      const GaugeTransformation b = random_gauge_transformation(spec, env, rng);
      const Matrix wa = full_gauge_unitary(space, a).dense();
      const Matrix wb = full_gauge_unitary(space, b).dense();
      const Matrix wab = full_gauge_unitary(space, a * b).dense();
      worst = std::max(worst, (wa * wb - wab).norm());
      const Vector vac = space.vacuum_vector();
      worst = std::max(worst, (wa * vac - vac).norm());
    }
    checks["gauge_homomorphism_and_vacuum"] = check_entry(worst, 1e-11);
  }

  // gauge action: projector routes agree, order-insensitive, and for
  // continuous kinds the site projections match the generator nullspaces
  {
    const Matrix p1 = gauss_projector(space, cfg.scoped_region());
    const Matrix p2 = gauss_projector_average(space, cfg.scoped_region());
    double worst = (p1 - p2).norm();

    const auto env_set = envelope(graph, cfg.scoped_region());
    std::vector<std::size_t> env(env_set.begin(), env_set.end());
    Rng shuffler(cfg.seed + 3);
    for (int trial = 0; trial < 2; ++trial) {
      std::shuffle(env.begin(), env.end(), shuffler.raw());
      Matrix prod = space.identity();
      for (std::size_t x : env) prod = gauss_site_projection(space, x) * prod;
      worst = std::max(worst, (prod - p1).norm());
    }
    if (continuous) {
      for (std::size_t x : env) {
        Matrix c2 = Matrix::Zero(space.total_dim(), space.total_dim());
        for (std::size_t r = 0; r < static_cast<std::size_t>(spec.lie_dim()); ++r) {
          const Matrix g = gauss_generator(space, x, r).op;
          c2 += g * g;
        }
        // the site projection spans exactly the joint generator nullspace
        worst = std::max(worst, (c2 * gauss_site_projection(space, x)).norm() /
                                    std::max(1.0, c2.norm()));
      }
    }
    checks["gauss_projector_two_routes"] = check_entry(worst, 1e-8);
  }

  // gauss generators exponentiate to the gauge unitaries
  if (continuous) {
    double worst = 0.0;
    const auto env = envelope(graph, cfg.scoped_region());
    for (std::size_t x : env) {
      for (std::size_t r = 0; r < static_cast<std::size_t>(spec.lie_dim()); ++r) {
        const double t = rng.uniform(-1.5, 1.5);
        GaugeTransformation gamma(spec);
        gamma.set(x, exp_element(spec, r, t));
        const Matrix lhs = full_gauge_unitary(space, gamma).dense();
        const Matrix rhs =
            hermitian_phase_exp(gauss_generator(space, x, r).op, -t);
        worst = std::max(worst, (lhs - rhs).norm());
      }
    }
    checks["gauss_generator_exponential_contract"] = check_entry(worst, 1e-8);
  }

  // observables: hermiticity, gauge invariance, sector preservation for
  // every term, and the containment of the restricted spectrum
  {
    const Matrix h = hamiltonian(space, cfg.couplings);
    const Matrix p = gauss_projector(space, cfg.scoped_region());
    double worst = 0.0;
    std::vector<Matrix> terms = {
        electric_term(space, cfg.couplings.lattice_spacing),
        magnetic_term(space, cfg.couplings.gauge_coupling,
                      cfg.couplings.lattice_spacing)};
    if (space.has_matter()) {
      terms.push_back(mass_term(space, cfg.couplings.mass,
                                cfg.couplings.lattice_spacing,
                                cfg.couplings.kernel));
      terms.push_back(hopping_term(space, cfg.couplings.lattice_spacing,
                                   cfg.couplings.kernel));
    }
    terms.push_back(h);
    for (const Matrix& t : terms) {
      worst = std::max(worst, hermiticity_residual(t));
      const auto gi = is_gauge_invariant(space, t, cfg.scoped_region(), tol, 10,
                                         cfg.seed);
      worst = std::max(worst, gi.max_residual);
      worst = std::max(worst, (p * t * p - t * p).norm() / std::max(1.0, t.norm()));
    }
    // spectrum of the restriction sits inside the full spectrum
    {
      Eigen::SelfAdjointEigenSolver<Matrix> pes(p);
      std::vector<Index> keep;
      for (Index i = 0; i < pes.eigenvalues().size(); ++i)
        if (pes.eigenvalues()(i) > 0.5) keep.push_back(i);
      Matrix w(space.total_dim(), static_cast<Index>(keep.size()));
      for (std::size_t i = 0; i < keep.size(); ++i)
        w.col(static_cast<Index>(i)) = pes.eigenvectors().col(keep[i]);
      const Spectrum red = eigs_dense((w.adjoint() * h * w).eval());
      const Spectrum full = eigs_dense(h);
      for (Index i = 0; i < red.values.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < full.values.size(); ++j)
          best = std::min(best, std::abs(red.values(i) - full.values(j)));
        worst = std::max(worst, best);
      }
    }
    checks["hamiltonian_invariance_and_sector"] = check_entry(worst, tol);

    if (!graph.plaquettes().empty()) {
      const LoopPath loop = loop_from_plaquette(graph, graph.plaquettes()[0]);
      const Matrix w0 = wilson_loop(space, loop);
      double wworst = 0.0;
      for (std::size_t shift = 1; shift < loop.steps.size(); ++shift)
        wworst = std::max(wworst,
                          (wilson_loop(space, rotated(loop, shift)) - w0).norm());
      wworst = std::max(
          wworst, (wilson_loop(space, reversed(loop)) - w0.adjoint()).norm());
      checks["wilson_cyclicity_and_reversal"] = check_entry(wworst, 1e-12);
    }
  }

  // solver: dense vs Lanczos and determinism
  {
    const Matrix h = hamiltonian(space, cfg.couplings);
    const Spectrum dense = eigs_dense(h);
    SpectrumRequest req;
    req.mode = SolverMode::Lanczos;
    req.k = 1;
    req.tol = 1e-10;
    req.seed = cfg.seed;
    req.max_iter = space.total_dim();
    const Spectrum l1 = eigs(h, req);
    const Spectrum l2 = eigs(h, req);
    double worst = std::abs(l1.values(0) - dense.values(0));
    worst = std::max(worst, std::abs(l1.values(0) - l2.values(0)));
    checks["solver_lanczos_vs_dense_and_determinism"] = check_entry(worst, 1e-8);
  }

  // constraint engine on the configured instance (small spaces only)
  if (space.total_dim() <= 20) {
    AlgebraOptions opts;
    opts.seed = cfg.seed;
    const MatrixAlgebra f = full_matrix_algebra(space.total_dim(), opts);
    const ConstraintSet c = gauge_constraints(space, cfg.region);
    const ConstraintData data = constraint_data(f, c);
    double worst = std::max({data.checks.left_ideal, data.checks.d_two_sided_ideal,
                             data.checks.d_in_o, data.checks.o_multiplier_equality,
                             data.checks.o_block_offdiag,
                             data.checks.traditional_in_o});
    // the engine's fixed space must match the projector route
    const Index r1 = data.dirac_rank;
    const Index r2 = invariant_dim(space, cfg.region);
    if (r1 != r2) worst = 1.0;
    if (!data.checks.r_rank_consistent) worst = 1.0;
    // first-class detection: a scalar constraint has no fixed space
    try {
      ConstraintSet bad;
      bad.unitaries = {std::exp(cplx(0, 0.5)) *
                       Matrix::Identity(space.total_dim(), space.total_dim())};
      constraint_data(f, bad);
      worst = 1.0;  // should have thrown
    } catch (const SecondClassError&) {
    }
    checks["tprocedure_structure_checks"] = check_entry(worst, 1e-9);
  }

  j["checks"] = checks;
  Report rep;
  rep.body = std::move(j);
  rep.pass = all_pass(rep.body["checks"]);
  rep.body["pass"] = rep.pass;
  return rep;
}

}  // namespace lgk
