use super::*;
use crate::lattice::inner;
use crate::liealg::C64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn couplings() -> Couplings {
    Couplings::new(0.65, 0.35, 0.13, 1.0).unwrap()
}

fn lat(n: usize, h: f64) -> Lattice {
    Lattice::cubic(n, h).unwrap()
}

fn random_state(lattice: Lattice, amp_a: f64, seed: u64) -> YmhState {
    presets::random_state(lattice, couplings(), amp_a, seed)
}

fn random_generator(lattice: Lattice, amp: f64, seed: u64) -> Cochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_fields(lattice, 0, FieldKind::Full, amp, &mut rng)
}

fn slot(v: &YmhTangent, which: usize) -> YmhTangent {
    let mut out = YmhTangent::zeros(v.a.lattice);
    match which {
        0 => out.a = v.a.clone(),
        1 => out.e = v.e.clone(),
        2 => out.phi = v.phi.clone(),
        _ => out.pi = v.pi.clone(),
    }
    out
}

#[test]
fn vacuum_is_a_critical_point_with_zero_energy() {
    let s = YmhState::vacuum(lat(3, 0.7), couplings());
    assert!(hamiltonian(&s) < 1e-30);
    assert!(eom_rhs(&s).sup_norm() < 1e-15);
    assert_eq!(momentum_map(&s).sup_norm(), 0.0);
}

#[test]
fn zero_higgs_energy_is_potential_times_volume() {
    let l = lat(2, 0.5);
    let c = couplings();
    let s = YmhState::zeros(l, c);
    let expected = c.lambda_h * c.nu_h.powi(4) / 4.0 * l.volume();
    assert!((hamiltonian(&s) - expected).abs() < 1e-15);
}

#[test]
fn eom_is_symplectic_gradient_of_h() {
    for seed in 0..4 {
        let s = random_state(lat(2, 0.8), 0.6, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let v = random_tangent(s.lattice(), 1.0, &mut rng);
        let x = eom_rhs(&s);
        for k in 0..4 {
            let w = slot(&v, k);
            let eps = 1e-5;
            let fd = (hamiltonian(&s.advance(&w, eps)) - hamiltonian(&s.advance(&w, -eps))) / (2.0 * eps);
            let exact = symplectic_form(&x, &w).unwrap();
            let rel = (fd - exact).abs() / exact.abs().max(1e-3);
            assert!(rel < 1e-7, "slot {k}: fd {fd} exact {exact}");
        }
    }
}

#[test]
fn hamiltonian_is_invariant_under_finite_gauge_transformations() {
    let s = random_state(lat(2, 1.0), 1.0, 7);
    let g = GaugeField::exp(&random_generator(s.lattice(), 2.0, 8)).unwrap();
    let t = g.apply(&s).unwrap();
    assert!((hamiltonian(&t) - hamiltonian(&s)).abs() < 1e-12 * hamiltonian(&s));
    let back = g.inverse().apply(&t).unwrap();
    let links: Vec<_> = back.links();
    for (u, v) in links.iter().zip(s.links()) {
        assert!((u.su2.alpha - v.su2.alpha).norm() + (u.su2.beta - v.su2.beta).norm() < 1e-12);
    }
    assert!(back.phi.sub(&s.phi).unwrap().sup_norm() < 1e-13);
}

#[test]
fn infinitesimal_action_is_derivative_of_finite_action() {
    let s = random_state(lat(2, 0.9), 0.5, 11);
    let xi = random_generator(s.lattice(), 1.0, 12);
    let t = 1e-5;
    let plus = GaugeField::exp(&xi.scale(t)).unwrap().apply(&s).unwrap();
    let minus = GaugeField::exp(&xi.scale(-t)).unwrap().apply(&s).unwrap();
    let inf = inf_gauge_action(&xi, &s).unwrap();
    let fd = |a: &Cochain, b: &Cochain| a.sub(b).unwrap().scale(0.5 / t);
    let chart = chart_tangent(&s, &inf);
    assert!(fd(&plus.a, &minus.a).sub(&chart).unwrap().sup_norm() < 1e-8);
    assert!(fd(&plus.e, &minus.e).sub(&inf.e).unwrap().sup_norm() < 1e-8);
    assert!(fd(&plus.phi, &minus.phi).sub(&inf.phi).unwrap().sup_norm() < 1e-8);
    assert!(fd(&plus.pi, &minus.pi).sub(&inf.pi).unwrap().sup_norm() < 1e-8);
}

#[test]
fn flat_action_is_minus_coboundary() {
    let mut s = random_state(lat(3, 0.6), 0.0, 13);
    s.a = Cochain::zeros(s.lattice(), 1, ValueType::Lie);
    let xi = random_generator(s.lattice(), 1.0, 14);
    let inf = inf_gauge_action(&xi, &s).unwrap();
    assert!(inf.a.add(&xi.d().unwrap()).unwrap().sup_norm() < 1e-15);
}

#[test]
fn homogeneous_action_is_commutator_in_chart() {
    let s = random_state(lat(1, 1.0), 1.2, 15);
    let xi = random_generator(s.lattice(), 1.0, 16);
    let chart = chart_tangent(&s, &inf_gauge_action(&xi, &s).unwrap());
    let x = LieCoeffs::from_slice(xi.value(0));
    for mu in 0..3 {
        let expect = x.bracket(s.a_at(mu));
        let got = LieCoeffs::from_slice(chart.value(mu));
        assert!((got - expect).norm() < 1e-13, "{got:?} vs {expect:?}");
    }
}

#[test]
fn center_generator_fixes_connection() {
    let s = random_state(lat(2, 1.0), 0.7, 17);
    let xi = Cochain::from_fn(s.lattice(), 0, ValueType::Lie, |_, v| (0.8 * LieCoeffs::I).write_to(v));
    assert!(inf_gauge_action(&xi, &s).unwrap().a.sup_norm() < 1e-15);
}

#[test]
fn momentum_map_is_transpose_of_action() {
    let s = random_state(lat(3, 0.7), 0.8, 21);
    let j = momentum_map(&s);
    for k in 0..50 {
        let xi = random_generator(s.lattice(), 1.0, 1000 + k);
        let inf = inf_gauge_action(&xi, &s).unwrap();
        let lhs = inner(&j, &xi).unwrap();
        let rhs = inner(&s.e, &inf.a).unwrap() + inner(&s.pi, &inf.phi).unwrap();
        assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()), "{lhs} vs {rhs}");
    }
}

#[test]
fn homogeneous_momentum_map_matches_dense_oracle() {
    // J = h⁻² Σ_μ (E_μ − Ad_{U_μ⁻¹} E_μ) + φ⋄π with Ad built from 2×2 matrices.
    let s = random_state(lat(1, 0.8), 0.9, 22);
    let h = s.lattice().h;
    let j = momentum_map(&s);
    let mut expect = [0.0; 4];
    let pauli = |a: usize| -> [[C64; 2]; 2] {
        let (o, l, i) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0));
        match a {
            0 => [[o, l], [l, o]],
            1 => [[o, -i], [i, o]],
            _ => [[l, o], [o, -l]],
        }
    };
    let mm = |a: [[C64; 2]; 2], b: [[C64; 2]; 2]| {
        let mut c = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    c[i][k] += a[i][j] * b[j][k];
                }
            }
        }
        c
    };
    for mu in 0..3 {
        let u = GroupElement::exp(s.a_at(mu)).su2.matrix();
        let ud = [[u[0][0].conj(), u[1][0].conj()], [u[0][1].conj(), u[1][1].conj()]];
        let ev = s.e_at(mu);
        let mut em = [[C64::new(0.0, 0.0); 2]; 2];
        for (a, c) in [ev.c1, ev.c2, ev.c3].iter().enumerate() {
            let p = pauli(a);
            for i in 0..2 {
                for k in 0..2 {
                    em[i][k] += C64::new(0.0, 0.5 * c) * p[i][k];
                }
            }
        }
        let rot = mm(mm(ud, em), u);
        for a in 0..3 {
            // coefficient of (i/2)σ_a is −i tr(σ_a X)
            let p = pauli(a);
            let tr = mm(p, rot);
            let coeff = (C64::new(0.0, -1.0) * (tr[0][0] + tr[1][1])).re;
            expect[a] += (ev.to_array()[a] - coeff) / (h * h);
        }
    }
    let fm = fiber_momentum(s.phi_at(0), s.pi_at(0));
    let got = LieCoeffs::from_slice(j.value(0));
    for a in 0..3 {
        assert!((got.to_array()[a] - expect[a] - fm.to_array()[a]).abs() < 1e-12);
    }
    assert!((got.c0 - fm.c0).abs() < 1e-14);
}

#[test]
fn formula_form_agrees_to_second_order_on_homogeneous_lattice() {
    let base = random_state(lat(1, 0.7), 1.0, 23);
    let defect = |t: f64| {
        let mut s = base.clone();
        s.a = base.a.scale(t);
        momentum_map(&s).sub(&momentum_map_formula(&s).unwrap()).unwrap().sup_norm()
    };
    assert!(defect(0.0) < 1e-13);
    let (d1, d2) = (defect(0.02), defect(0.01));
    assert!(d1 > 0.0);
    let ratio = d1 / d2;
    assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");

    let mut flat = random_state(lat(3, 0.6), 0.0, 24);
    flat.a = Cochain::zeros(flat.lattice(), 1, ValueType::Lie);
    let d = momentum_map(&flat).sub(&momentum_map_formula(&flat).unwrap()).unwrap().sup_norm();
    assert!(d < 1e-12, "{d}");
}

#[test]
fn leapfrog_conserves_momentum_map() {
    let s0 = build_preset(Preset::Generic, lat(2, 1.0), couplings(), 3).unwrap();
    let mut s = random_state(lat(2, 1.0), 0.4, 24);
    s.lapse = s0.lapse.clone();
    let j0 = momentum_map(&s);
    for _ in 0..300 {
        s = step_leapfrog(&s, 0.01).unwrap();
    }
    let drift = momentum_map(&s).sub(&j0).unwrap().norm();
    assert!(drift < 1e-12 * (1.0 + j0.norm()), "drift {drift}");
}

#[test]
fn leapfrog_energy_error_is_second_order() {
    let s0 = random_state(lat(2, 1.0), 0.4, 25);
    let h0 = hamiltonian(&s0);
    let err = |dt: f64| {
        let n = (0.4 / dt).round() as usize;
        let mut s = s0.clone();
        let mut worst: f64 = 0.0;
        for _ in 0..n {
            s = step_leapfrog(&s, dt).unwrap();
            worst = worst.max((hamiltonian(&s) - h0).abs());
        }
        worst
    };
    let ratio = err(0.02) / err(0.01);
    assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn one_step_is_consistent_with_rhs() {
    let s = random_state(lat(2, 1.0), 0.4, 26);
    let x = eom_rhs(&s);
    let dt = 1e-4;
    let next = step_leapfrog(&s, dt).unwrap();
    let lin = s.advance(&x, dt);
    assert!(next.distance(&lin).unwrap() < 10.0 * dt * dt * (1.0 + x.sup_norm()));
    assert!(step_leapfrog(&s, 0.0).is_err());
}

#[test]
fn homogeneous_abelian_link_drifts_linearly() {
    let c = couplings();
    let mut s = YmhState::vacuum(lat(1, 1.0), c);
    let e = LieCoeffs::new(0.0, 0.0, 0.3, -0.2);
    for mu in 0..3 {
        e.write_to(s.e.value_mut(mu));
    }
    s.phi = Cochain::zeros(s.lattice(), 0, ValueType::Pair);
    s.lapse.data[0] = 1.0;
    let x = eom_rhs(&s);
    let kiw = c.kappa_inv_weights();
    for mu in 0..3 {
        let v = LieCoeffs::from_slice(x.a.value(mu));
        assert!((v.c3 - kiw[2] * 0.3).abs() < 1e-15 && (v.c0 + kiw[3] * 0.2).abs() < 1e-15);
        assert!(LieCoeffs::from_slice(x.e.value(mu)).norm() < 1e-15);
    }
}

#[test]
fn almost_complex_structure_properties() {
    let l = lat(2, 0.7);
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for _ in 0..20 {
        let v = random_tangent(l, 1.0, &mut rng);
        let w = random_tangent(l, 1.0, &mut rng);
        let jj = almost_complex_j(&almost_complex_j(&v));
        assert_eq!(jj.add(&v).unwrap().sup_norm(), 0.0);
        let a = symplectic_form(&v, &almost_complex_j(&w)).unwrap();
        assert!((a - l2_inner(&v, &w).unwrap()).abs() < 1e-12);
        let b = symplectic_form(&almost_complex_j(&v), &almost_complex_j(&w)).unwrap();
        assert!((b - symplectic_form(&v, &w).unwrap()).abs() < 1e-12);
        assert!(symplectic_form(&v, &almost_complex_j(&v)).unwrap() > 0.0);
    }
}

#[test]
fn unitary_gauge_round_trip() {
    let s = random_state(lat(2, 1.0), 0.5, 28);
    let (g, u) = unitary_gauge(&s).unwrap();
    for x in 0..u.lattice().sites() {
        let p = u.phi_at(x);
        assert!(p[0].norm() < 1e-12 && p[1].im.abs() < 1e-12 && p[1].re > 0.0);
    }
    let back = g.apply(&u).unwrap();
    assert!(back.phi.sub(&s.phi).unwrap().sup_norm() < 1e-10);
    assert!(back.e.sub(&s.e).unwrap().sup_norm() < 1e-10);
    assert!(back.pi.sub(&s.pi).unwrap().sup_norm() < 1e-10);
    assert!((hamiltonian(&back) - hamiltonian(&s)).abs() < 1e-10);

    let vac = YmhState::vacuum(lat(2, 1.0), couplings());
    let (g, _) = unitary_gauge(&vac).unwrap();
    assert!(g.elements.iter().all(|e| *e == GroupElement::IDENTITY));

    let mut bad = s.clone();
    bad.phi.value_mut(3).iter_mut().for_each(|v| *v = 0.0);
    assert!(matches!(unitary_gauge(&bad), Err(Error::Domain(_))));
}

fn unitary_random(l: Lattice, seed: u64) -> YmhState {
    unitary_gauge(&random_state(l, 0.5, seed)).unwrap().1
}

#[test]
fn gws_round_trip_is_exact() {
    let s = unitary_random(lat(2, 0.9), 29);
    let f = to_gws(&s).unwrap();
    let back = from_gws(&f).unwrap();
    assert!(back.a.sub(&s.a).unwrap().sup_norm() < 1e-13);
    assert!(back.e.sub(&s.e).unwrap().sup_norm() < 1e-13);
    assert!(back.pi.sub(&s.pi).unwrap().sup_norm() < 1e-13);
    assert!(back.phi.sub(&s.phi).unwrap().sup_norm() < 1e-13);
    assert!(to_gws(&random_state(lat(2, 0.9), 0.5, 29)).is_err());
}

#[test]
fn gws_neutral_mixing_matches_definitions() {
    // A = c (t3 + i): W3 = c/g, B = c/g', so Z = cos W3 − sin B, A_γ = sin W3 + cos B.
    let c = couplings();
    let mut s = YmhState::vacuum(lat(1, 1.0), c);
    let amp = 0.37;
    LieCoeffs::new(0.0, 0.0, amp, amp).write_to(s.a.value_mut(0));
    let f = to_gws(&s).unwrap();
    let (w3, b) = (amp / c.g, amp / c.gp);
    assert!((f.z.data[0] - (c.cos_w() * w3 - c.sin_w() * b)).abs() < 1e-15);
    assert!((f.agamma.data[0] - (c.sin_w() * w3 + c.cos_w() * b)).abs() < 1e-15);
    assert!(f.wp.sup_norm() == 0.0);

    let sym = Couplings::new(0.5, 0.5, 0.1, 1.0).unwrap();
    assert!((sym.theta_w() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
}

#[test]
fn gws_variables_are_darboux() {
    let s = unitary_random(lat(2, 0.8), 30);
    let f = to_gws(&s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..10 {
        let mut v = s.clone();
        v.a = random_fields(s.lattice(), 1, FieldKind::Full, 1.0, &mut rng);
        v.phi = Cochain::from_fn(s.lattice(), 0, ValueType::Pair, |_, p| {
            p.iter_mut().for_each(|x| *x = 0.0);
            p[2] = rng.random_range(-1.0..1.0);
        });
        // linear map: the variation of the new variables is the map applied to the variation
        let dv = to_gws_linear(&v);
        let lhs = inner(&s.e, &v.a).unwrap() + inner(&s.pi, &v.phi).unwrap();
        let h = s.lattice().h;
        let mut rhs = 0.0;
        for e in 0..f.dm.cells() {
            let dm = C64::new(f.dm.value(e)[0], f.dm.value(e)[1]);
            let dwm = C64::new(dv.wm.value(e)[0], dv.wm.value(e)[1]);
            rhs += h * (2.0 * (dm * dwm).re + f.dz.data[e] * dv.z.data[e] + f.dgamma.data[e] * dv.agamma.data[e]);
        }
        for x in 0..s.lattice().sites() {
            rhs += h.powi(3) * f.pi_eta.data[x] * dv.eta.data[x];
        }
        assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()), "{lhs} vs {rhs}");
    }
}

/// Linear part of the change of variables applied to a variation whose
/// Higgs component is `(0, real)`.
fn to_gws_linear(v: &YmhState) -> GWSFields {
    let mut shifted = v.clone();
    let nu = v.couplings.nu_h.abs();
    for x in 0..v.lattice().sites() {
        shifted.phi.value_mut(x)[2] += 10.0;
    }
    let mut f = to_gws(&shifted).unwrap();
    for x in 0..v.lattice().sites() {
        f.eta.data[x] -= 10.0 * std::f64::consts::SQRT_2 / nu;
    }
    f
}

#[test]
fn component_residuals_reassemble_to_formula_form() {
    for seed in 0..20 {
        let s = unitary_random(lat(2, 0.8), 40 + seed);
        let d = gws_identity_defect(&s).unwrap();
        assert!(d < 1e-12, "seed {seed}: {d}");
    }
    let vac = YmhState::vacuum(lat(2, 1.0), couplings());
    assert_eq!(gauss_gws_residual(&to_gws(&vac).unwrap()).unwrap().sup_norm(), 0.0);
}

#[test]
fn singular_component_equations_reduce() {
    let c = couplings();
    let s = build_preset(Preset::SingularStratum, lat(2, 1.0), c, 5).unwrap();
    let f = to_gws(&s).unwrap();
    assert!(f.on_singular_stratum(1e-12));
    let r = gauss_gws_residual(&f).unwrap();
    let exp_g = f.dgamma.codiff().unwrap().scale(-1.0);
    assert!(r.gamma.sub(&exp_g).unwrap().sup_norm() < 1e-14);
    let n = c.g_norm();
    for x in 0..s.lattice().sites() {
        let src = f.eta.data[x] * c.nu_h * n / (2.0 * std::f64::consts::SQRT_2)
            * f.pi2.value(x)[1];
        let lin = -f.dz.codiff().unwrap().data[x];
        assert!((r.z.data[x] - (lin - src)).abs() < 1e-13);
    }
    assert!(r.minus.sup_norm() < 1e-14 && r.plus.sup_norm() < 1e-14);
}

#[test]
fn singular_hamiltonian_matches_general() {
    for seed in 0..10 {
        let mut s = build_preset(Preset::SingularStratum, lat(2, 0.9), couplings(), 50 + seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        s.lapse.data.iter_mut().for_each(|l| *l = rng.random_range(0.8..1.2));
        let f = to_gws(&s).unwrap();
        let a = hamiltonian_singular(&f).unwrap();
        let b = hamiltonian(&from_gws(&f).unwrap());
        assert!((a - b).abs() < 1e-12 * (1.0 + b), "{a} vs {b}");
    }
    let off = to_gws(&unitary_random(lat(2, 1.0), 3)).unwrap();
    assert!(matches!(hamiltonian_singular(&off), Err(Error::Precondition(_))));
    let vac = to_gws(&YmhState::vacuum(lat(2, 1.0), couplings())).unwrap();
    assert!(hamiltonian_singular(&vac).unwrap() < 1e-30);
}

#[test]
fn flow_is_tangent_to_singular_stratum() {
    let s = build_preset(Preset::SingularStratum, lat(2, 1.0), couplings(), 61).unwrap();
    let x = eom_rhs(&s);
    for e in 0..x.a.cells() {
        let (a, d) = (x.a.value(e), x.e.value(e));
        assert!(a[0].abs() + a[1].abs() + d[0].abs() + d[1].abs() < 1e-14);
    }
    for p in 0..x.pi.cells() {
        assert!(x.pi.value(p)[0].abs() + x.pi.value(p)[1].abs() < 1e-14);
    }
}

#[test]
fn printed_and_fitted_masses() {
    let unit = Couplings::new(1.0, 1.0, 1.0, 1.0).unwrap();
    assert_eq!(masses(&unit, 1.0), (0.5, -4.0));
    let c = couplings();
    let n2 = c.g * c.g + c.gp * c.gp;
    for eta0 in [0.8, 1.0, 1.3] {
        let fit = fitted_z_mass_sq(&c, eta0).unwrap();
        let lattice_form = eta0 * eta0 * c.nu_h * c.nu_h * n2 / 8.0;
        assert!((fit - lattice_form).abs() < 1e-6 * lattice_form.max(1.0), "{fit} vs {lattice_form}");
        assert!((masses(&c, eta0).0 / fit - 2.0).abs() < 1e-5);
    }
    let mh = fitted_higgs_mass_sq(&c).unwrap();
    assert!((mh - 4.0 * c.lambda_h).abs() < 1e-6);
    assert!((printed_potential_curvature(&c) - 8.0 * c.lambda_h).abs() < 1e-15);
}

#[test]
fn k_momentum_properties() {
    let s = unitary_random(lat(2, 0.8), 70);
    let r = reduce_to_u1(&to_gws(&s).unwrap());
    let k = k_momentum(&r).unwrap();
    assert!((k_momentum(&r.rotate(1.234)).unwrap() - k).abs() < 1e-12);
    let zero = ReducedU1Point { v: r.v.scale(0.0), d_v: r.d_v.clone() };
    assert_eq!(k_momentum(&zero).unwrap(), 0.0);
    let parallel = ReducedU1Point { v: r.v.clone(), d_v: r.v.scale(2.5) };
    assert!(k_momentum(&parallel).unwrap().abs() < 1e-15);
}

#[test]
fn gauss_split_at_trivial_connection() {
    let mut s = random_state(lat(3, 0.8), 0.0, 80);
    s.a = Cochain::zeros(s.lattice(), 1, ValueType::Lie);
    let sp = gauss_split(&s).unwrap();
    assert_eq!(sp.iterations(), 1);
    assert!(sp.residual < 1e-10);
    let fixed = apply_split(&s, &sp).unwrap();
    let j = momentum_map(&fixed);
    for x in 0..j.cells() {
        assert!((LieCoeffs::from_slice(j.value(x)) - sp.stab_part).norm() < 1e-9);
    }
}

#[test]
fn gauss_split_picard_and_total_charge() {
    let s = random_state(lat(3, 0.8), 0.05, 81);
    let sp = gauss_split(&s).unwrap();
    assert!(sp.residual < 1e-9 && sp.iterations() > 1);
    // total charge summed edge by edge
    let lat = s.lattice();
    let links = s.links();
    let mut total = LieCoeffs::zero();
    for e in 0..lat.cell_count(1) {
        total += (1.0 / (lat.h * lat.h)) * (s.e_at(e) - links[e].adjoint_inverse(s.e_at(e)));
    }
    for x in 0..lat.sites() {
        total += fiber_momentum(s.phi_at(x), s.pi_at(x));
    }
    let mean = (1.0 / lat.sites() as f64) * total;
    assert!((mean - sp.stab_part).norm() < 1e-10);
    let solved = project_gauss(&s).unwrap();
    let split = gauss_split(&solved).unwrap();
    assert!(split.nu_m.sup_norm() < 1e-9 && split.stab_part.norm() < 1e-9 && split.sigma.sup_norm() == 0.0);
}

#[test]
fn gauss_split_reports_divergence() {
    let s = random_state(lat(3, 1.0), 3.0, 82);
    match gauss_split(&s) {
        Ok(sp) => assert!(sp.residual < 1e-9),
        Err(e) => assert!(e.is_numerical()),
    }
}

#[test]
fn coulomb_split_cases() {
    let l = lat(4, 0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let f0 = Cochain::from_fn(l, 0, ValueType::Real, |_, v| v[0] = rng.random_range(-1.0..1.0));
    let exact = f0.d().unwrap();
    let sp = coulomb_split(&exact).unwrap();
    assert!(sp.beta.sup_norm() < 1e-9 && sp.harm.sup_norm() < 1e-12 && sp.residual < 1e-9);

    let b0 = Cochain::from_fn(l, 2, ValueType::Real, |_, v| v[0] = rng.random_range(-1.0..1.0));
    let coexact = b0.codiff().unwrap();
    let sp = coulomb_split(&coexact).unwrap();
    assert!(sp.f.sup_norm() < 1e-9 && sp.beta.sub(&coexact).unwrap().sup_norm() < 1e-9);

    let constant = Cochain::from_fn(l, 1, ValueType::Real, |i, v| v[0] = [0.3, -0.1, 0.7][i % 3]);
    let sp = coulomb_split(&constant).unwrap();
    assert!(sp.harm.sub(&constant).unwrap().sup_norm() < 1e-12 && sp.beta.sup_norm() < 1e-12);
    assert!(sp.curvature.sup_norm() < 1e-15);
}

#[test]
fn presets_satisfy_constraint_and_are_seeded() {
    let c = couplings();
    for p in Preset::ALL {
        let s = build_preset(p, lat(2, 1.0), c, 9).unwrap();
        assert!(momentum_map(&s).sup_norm() < 1e-9, "{p}");
        assert_eq!(s, build_preset(p, lat(2, 1.0), c, 9).unwrap());
        to_gws(&s).unwrap();
        assert_eq!(p.name().parse::<Preset>().unwrap(), p);
    }
    assert_eq!(build_preset(Preset::HomogeneousRandom, lat(3, 1.0), c, 1).unwrap().lattice().sites(), 1);
    assert!("nope".parse::<Preset>().is_err());
}
