#include "eulerfv/commands.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "eulerfv/cases.hpp"
#include "eulerfv/flux.hpp"
#include "eulerfv/young.hpp"

namespace efv {

// Quick sanity checks over the hand-checkable corner cases of every module;
// runs in well under a second.
SelftestResult selftest() {
  std::ostringstream report;
  int total = 0, failed = 0;
  auto check = [&](const char* name, const std::function<bool()>& fn) {
    ++total;
    bool ok = false;
    std::string note;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      note = e.what();
    }
    if (!ok) {
      ++failed;
      report << "FAIL " << name << (note.empty() ? "" : ": " + note) << "\n";
    } else {
      report << "ok   " << name << "\n";
    }
  };
  auto throws = [](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception&) {
      return true;
    }
    return false;
  };

  check("mesh: periodic wrap of 4 cells", [] {
    Mesh m = build_mesh({1, {4, 1, 1}});
    return m.cell_count() == 4 && m.neighbor_of(0, 0, -1) == 3;
  });
  check("mesh: single cell rejected",
        [&] { return throws([] { build_mesh({1, {1, 1, 1}}); }); });
  check("mesh: projection reproduces constants", [] {
    Mesh m = build_mesh({1, {8, 1, 1}});
    Field f = project(m, [](const Point&) { return 2.5; });
    for (double v : f)
      if (v != 2.5) return false;
    return true;
  });
  check("mesh: restriction averages equal-volume children", [] {
    Mesh coarse = build_mesh({1, {2, 1, 1}});
    Mesh fine = build_mesh({1, {4, 1, 1}});
    Field cv = restrict_to_coarse(fine, Field{1.0, 3.0, 2.0, 2.0}, coarse);
    return cv[0] == 2.0 && cv[1] == 2.0;
  });

  check("eos: vacuum pressure and potential vanish", [] {
    GasLaw gas{1.0, 1.5};
    return pressure(gas, 0.0) == 0.0 && pressure_potential(gas, 0.0) == 0.0;
  });
  check("eos: boundary alpha rejected",
        [&] { return throws([] { validate_parameters(1.5, 1.0, -0.8); }); });
  check("eos: energy density of vacuum is zero", [] {
    const double u[] = {1.0};
    return total_energy_density(GasLaw{1.0, 1.5}, 0.0, {u, 1}) == 0.0;
  });

  check("flux: zero normal velocity upwinds to zero", [] {
    return upwind(FaceTrace{4.0, -7.0}, 0.0) == 0.0;
  });
  check("flux: constant trace transports", [] {
    const double v = numerical_flux(FaceTrace{2.0, 2.0}, 0.3, 0.01, 0.5);
    return std::fabs(v - 0.6) < 1e-15;
  });
  check("flux: centered pressure term", [] {
    return pressure_face_term(FaceTrace{2.0, 4.0}) == 3.0;
  });

  check("solver: constant state is a fixed point", [] {
    Mesh mesh = build_mesh({1, {8, 1, 1}});
    State s;
    s.rho.assign(8, 1.0);
    s.u = {Field(8, 0.5)};
    auto [next, rep] = advance(s, 0.05, mesh, GasLaw{1.0, 1.5}, SchemeParams{});
    return rep.newton_iterations == 0 && next.rho[3] == 1.0;
  });

  check("energy: constant state audit is exact", [] {
    Mesh mesh = build_mesh({1, {8, 1, 1}});
    State s;
    s.rho.assign(8, 1.0);
    s.u = {Field(8, 0.0)};
    EnergyAuditRecord rec = balance_audit(s, s, 0.1, mesh, GasLaw{1.0, 1.5}, 0.5, -0.8, 1e-9);
    return rec.pass && rec.lhs == 0.0 && discrete_energy(s, mesh, GasLaw{1.0, 1.5}) == 4.0;
  });

  check("cases: constant riemann data stays constant", [] {
    RiemannCase rc = make_riemann(GasLaw{1.0, 1.4}, {1.0, 0.1}, {1.0, 0.1});
    auto [rho, u] = exact_rarefaction(rc, 0.2, 0.5 * rc.t_valid);
    return std::fabs(rho - 1.0) < 1e-12 && std::fabs(u - 0.1) < 1e-12;
  });
  check("cases: smooth data hits the mean at the origin", [] {
    InitialData d = smooth_periodic(1, SmoothPeriodicParams{});
    return d.density({0.0, 0.0, 0.0}) == 1.0;
  });

  check("young: single atom pairs to its own value", [] {
    EmpiricalYoungMeasure v;
    v.dim = 1;
    v.atoms.push_back(PhasePoint{1, 1.5, {0.2, 0, 0}});
    Observable g = make_bump(1, {1.5, 0.2, 0.0, 0.0}, 1.0, "g");
    return pair_observable(v, g) == g.eval(v.atoms[0]);
  });
  check("young: two-atom barycenter", [] {
    EmpiricalYoungMeasure v;
    v.dim = 1;
    v.atoms.push_back(PhasePoint{1, 1.0, {0, 0, 0}});
    v.atoms.push_back(PhasePoint{1, 3.0, {0, 0, 0}});
    return barycenter(v).rho == 2.0;
  });
  check("young: dirac defects vanish", [] {
    EmpiricalYoungMeasure v;
    v.dim = 1;
    v.probe_label = "selftest";
    v.atoms.push_back(PhasePoint{1, 1.3, {0.4, 0, 0}});
    DefectEstimates d = defects(v, GasLaw{1.0, 1.5});
    return d.d_int == 0.0 && d.d_kin == 0.0;
  });
  check("young: zero matrix is positive semidefinite", [] {
    SymMatrix z;
    z.dim = 2;
    return psd_check(z).pass;
  });

  check("kconv: cesaro mean of 1,2,3", [] {
    Field m = cesaro_mean({Field{1.0}, Field{2.0}, Field{3.0}});
    return m[0] == 2.0;
  });
  check("kconv: all-zero diagnostics classify strong-K", [] {
    StudyDiagnostics diag;
    diag.mu_per_level = {0.0, 0.0};
    return classify(diag, Thresholds{0.01, 0.1, 0.001}) == Classification::strong_k;
  });

  SelftestResult out;
  out.total = total;
  out.failed = failed;
  out.report = report.str();
  return out;
}

} // namespace efv
