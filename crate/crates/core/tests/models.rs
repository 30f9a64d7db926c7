mod common;

use braided_rmatrix::classical::ClassicalRData;
use braided_rmatrix::models::cp2::untwisted;
use braided_rmatrix::models::gl44::Gl44;
use braided_rmatrix::models::{build, ModelId, RModel};
use braided_rmatrix::param::ParamPoint;
use braided_rmatrix::quantum::k_defect_ratio;
use braided_rmatrix::sampling::{Sampler, SamplingConfig};
use braided_rmatrix::tensor::{CMatrix, Pair, Residual, C64};
use braided_rmatrix::triple::relation;
use common::{c, golden_bc, golden_gamma_tilde};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-12;

fn rel(a: &CMatrix, b: &CMatrix) -> f64 {
    Residual::between(a, b).relative
}

fn random(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn points(m: &dyn RModel, n: usize) -> Vec<ParamPoint> {
    Sampler::new(11).points(m, n, &SamplingConfig::for_model(m.id())).unwrap()
}

#[test]
fn b_and_c_match_explicit_matrix_units() {
    for id in ModelId::ALL {
        let m = build(id);
        let data = ClassicalRData::build(m.as_ref());
        let (b, cc) = golden_bc(id);
        assert!(rel(&data.b, &b) < TOL, "{id} b from s and alpha");
        assert!(rel(&data.c, &cc) < TOL, "{id} c from s and alpha");
        assert!(rel(&m.b_printed(), &b) < TOL, "{id} printed b");
        assert!(rel(&m.c_printed(), &cc) < TOL, "{id} printed c");
    }
}

#[test]
fn sigma_has_the_model_order_and_preserves_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for id in ModelId::ALL {
        let alg = build(id).algebra().clone();
        for _ in 0..5 {
            let (x, y) = (random(alg.dim, &mut rng), random(alg.dim, &mut rng));
            assert!(rel(&alg.sigma_pow(&x, alg.order), &x) < TOL, "{id} order");
            let lhs = alg.sigma(&alg.bracket(&x, &y));
            let rhs = alg.bracket(&alg.sigma(&x), &alg.sigma(&y));
            assert!(rel(&lhs, &rhs) < TOL, "{id} automorphism");
        }
    }
}

#[test]
fn projections_are_complete_idempotent_eigenprojections() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for id in ModelId::ALL {
        let alg = build(id).algebra().clone();
        let x = random(alg.dim, &mut rng);
        let mut sum = CMatrix::zeros(alg.dim, alg.dim);
        for k in 0..alg.order {
            let pk = alg.project(&x, k);
            assert!(rel(&alg.project(&pk, k), &pk) < TOL, "{id} idempotent {k}");
            let omega = C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / alg.order as f64);
            assert!(rel(&alg.sigma(&pk), &pk.scale(omega)) < TOL, "{id} eigenvalue {k}");
            sum += pk;
        }
        assert!(rel(&sum, &x) < TOL, "{id} complete");
    }
}

#[test]
fn fixed_basis_is_sigma_invariant() {
    for id in ModelId::ALL {
        let alg = build(id).algebra().clone();
        for x in &alg.f0_basis {
            assert!(rel(&alg.sigma(x), x) < TOL, "{id}");
        }
    }
}

#[test]
fn casimir_commutes_with_coproduct() {
    for id in ModelId::ALL {
        let alg = build(id).algebra().clone();
        let d = alg.dim;
        let one = CMatrix::identity(d);
        for i in 0..d {
            for j in 0..d {
                // the CSG algebra is block diagonal
                if id == ModelId::Csg && i / 2 != j / 2 {
                    continue;
                }
                let x = CMatrix::unit(d, i, j);
                let delta = alg.tk(&x, &one) + alg.tk(&one, &x);
                let comm = &delta * &alg.casimir - &alg.casimir * &delta;
                assert!(comm.norm() < 1e-12, "{id} E[{i},{j}]");
            }
        }
    }
}

#[test]
fn casimir_components_sum_to_casimir() {
    for id in ModelId::ALL {
        let m = build(id);
        let data = ClassicalRData::build(m.as_ref());
        let mut sum = CMatrix::zeros(data.s.rows(), data.s.cols());
        for comp in &data.components {
            sum += comp;
        }
        assert!(rel(&sum, &m.algebra().casimir) < TOL, "{id}");
        assert!(rel(&data.s, &m.c00_printed()) < TOL, "{id} printed C00");
    }
}

#[test]
fn gamma_tilde_goldens() {
    let p = C64::from_polar(1.07, 0.3);
    for id in ModelId::ALL {
        let w = golden_gamma_tilde(id, p);
        let got = build(id).gamma_tilde(p);
        assert_eq!(got.len(), w.len());
        for (g, w) in got.iter().zip(&w) {
            assert!((g - w).norm() < 1e-12 * w.norm(), "{id}: {g} vs {w}");
        }
    }
}

#[test]
fn gl44_deformed_components_reduce_at_q_one() {
    let m = Gl44::new();
    let comps = m.components();
    assert!(rel(&m.c13_q(c(1.0)), &comps[1]) < TOL);
    assert!(rel(&m.c31_q(c(1.0)), &comps[3]) < TOL);
}

#[test]
fn csg_k_defect_ratio_is_near_four() {
    let m = build(ModelId::Csg);
    for lambda in [c(0.4), C64::new(0.3, 0.9), c(2.5), C64::from_polar(0.7, 2.0), C64::new(-1.6, 0.4)] {
        let r = k_defect_ratio(m.as_ref(), lambda, 1e-3).unwrap();
        assert!((3.5..=4.5).contains(&r), "lambda={lambda}: ratio {r}");
    }
}

#[test]
fn cp2_untwisted_matrix_satisfies_spectral_ybe() {
    let m = build(ModelId::Cp2);
    let alg = m.algebra();
    for pt in points(m.as_ref(), 4) {
        let l3 = pt.mu * C64::from_polar(1.3, 0.8);
        let at = |a: C64, b: C64| untwisted(m.as_ref(), &ParamPoint::new(pt.p, a, b)).unwrap();
        let (a12, a13, a23) = (at(pt.lambda, pt.mu), at(pt.lambda, l3), at(pt.mu, l3));
        let r = relation(
            alg,
            &[(&a12, Pair::P12), (&a13, Pair::P13), (&a23, Pair::P23)],
            &[(&a23, Pair::P23), (&a13, Pair::P13), (&a12, Pair::P12)],
        );
        assert!(r.relative < 1e-10, "{}", r.relative);
    }
    assert!(untwisted(build(ModelId::Csg).as_ref(), &ParamPoint::new(c(1.1), c(0.5), c(0.7))).is_err());
}

#[test]
fn d_is_flipped_a_where_stated() {
    for id in [ModelId::Cp2, ModelId::Su3So3] {
        let m = build(id);
        assert!(m.d_is_a21());
        for pt in points(m.as_ref(), 4) {
            let a21 = m.algebra().flip21(&m.a_q(pt.p, pt.lambda).unwrap());
            assert!(rel(&m.d_q(pt.p, pt.lambda).unwrap(), &a21) < 1e-12, "{id}");
        }
    }
}

#[test]
fn constant_families_are_trivial_at_q_one() {
    for id in ModelId::ALL {
        let m = build(id);
        let one = CMatrix::identity(m.dim() * m.dim());
        assert!(rel(&m.b_q(c(1.0)), &one) < TOL, "{id} B");
        assert!(rel(&m.c_q(c(1.0)), &one) < TOL, "{id} C");
    }
}
