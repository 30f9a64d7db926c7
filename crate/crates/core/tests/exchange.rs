use braided_rmatrix::exchange::*;
use braided_rmatrix::models::{build, ModelId, RModel};
use braided_rmatrix::param::ParamPoint;
use braided_rmatrix::sampling::{Sampler, SamplingConfig};
use braided_rmatrix::tensor::C64;
use braided_rmatrix::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn classical_point() -> ParamPoint {
    ParamPoint::new(c(1.0, 0.0), c(0.6, 0.2), c(1.3, -0.4))
}

fn points(m: &dyn RModel, n: usize) -> Vec<ParamPoint> {
    Sampler::new(5).points(m, n, &SamplingConfig::for_model(m.id())).unwrap()
}

fn random_coef(n: usize, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

/// `new[k,l,i,j] = old[i,j,k,l]` on one four-axis block.
fn swapped_pairs(old: &[C64], d: usize) -> Vec<C64> {
    let d2 = d * d;
    let mut out = vec![c(0.0, 0.0); d2 * d2];
    for a in 0..d2 {
        for b in 0..d2 {
            out[b * d2 + a] = old[a * d2 + b];
        }
    }
    out
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn same_site_map_is_plain_swap_at_q_one() {
    for id in [ModelId::Csg, ModelId::Cp2, ModelId::Su3So3] {
        let m = build(id);
        let d = m.dim();
        let rules = ExchangeRuleSet::build(m.as_ref(), &classical_point(), Layout::Open(1)).unwrap();
        let word = vec![Letter::new(1, Slot::Lambda), Letter::new(1, Slot::Mu)];
        let x = random_coef(d.pow(4), 1);
        let (w, y) = rules.exchange(&word, &x, 0).unwrap();
        assert_eq!(w, vec![Letter::new(1, Slot::Mu), Letter::new(1, Slot::Lambda)]);
        assert!(max_diff(&y, &swapped_pairs(&x, d)) < 1e-12, "{id}");
    }
}

#[test]
fn far_letters_commute() {
    let m = build(ModelId::Cp2);
    let pt = points(m.as_ref(), 1)[0];
    let rules = ExchangeRuleSet::build(m.as_ref(), &pt, Layout::Open(3)).unwrap();
    let word = vec![Letter::new(1, Slot::Mu), Letter::new(3, Slot::Lambda)];
    let x = random_coef(81, 2);
    let (w, y) = rules.exchange(&word, &x, 0).unwrap();
    assert_eq!(w, vec![Letter::new(3, Slot::Lambda), Letter::new(1, Slot::Mu)]);
    assert_eq!(y, swapped_pairs(&x, 3));
}

#[test]
fn exchange_position_out_of_range_is_an_error() {
    let m = build(ModelId::Cp2);
    let rules = ExchangeRuleSet::build(m.as_ref(), &classical_point(), Layout::Monodromy).unwrap();
    let word = vec![Letter::new(1, Slot::Lambda), Letter::new(1, Slot::Mu)];
    assert!(rules.exchange(&word, &random_coef(81, 3), 1).is_err());
    // same-site letters already in target order have no rule
    let ordered = vec![Letter::new(1, Slot::Mu), Letter::new(1, Slot::Lambda)];
    assert!(rules.exchange(&ordered, &random_coef(81, 3), 0).is_err());
}

#[test]
fn double_reorder_is_identity_where_the_algebra_is_unitary() {
    for id in [ModelId::Cp2, ModelId::Su3So3] {
        let m = build(id);
        for pt in points(m.as_ref(), 4) {
            let r = double_reorder_residual(m.as_ref(), &pt).unwrap();
            assert!(r.relative < 1e-10, "{id}: {}", r.relative);
        }
    }
}

#[test]
fn csg_double_reorder_carries_the_k_defect() {
    // the CSG unitarity scalar is a matrix, so reordering twice is not the identity
    let m = build(ModelId::Csg);
    for pt in points(m.as_ref(), 2) {
        let r = double_reorder_residual(m.as_ref(), &pt).unwrap();
        assert!(r.relative > 1e-3, "{}", r.relative);
    }
}

#[test]
fn rule_sets_are_well_conditioned_and_round_trip() {
    for id in [ModelId::Csg, ModelId::Cp2, ModelId::Su3So3] {
        let m = build(id);
        for pt in points(m.as_ref(), 4) {
            let rules = ExchangeRuleSet::build(m.as_ref(), &pt, Layout::Open(2)).unwrap();
            assert!(rules.condition < 1e4, "{id}: condition {}", rules.condition);
            let rt = rules.roundtrip_residual().expect("same-site round trip");
            assert!(rt.relative < 1e-10, "{id}: {}", rt.relative);
        }
    }
}

#[test]
fn normal_ordering_conserves_letters_and_orders_words() {
    let m = build(ModelId::Cp2);
    let pt = points(m.as_ref(), 1)[0];
    let layout = Layout::Periodic(3);
    let rules = ExchangeRuleSet::build(m.as_ref(), &pt, layout).unwrap();
    let word = vec![
        Letter::new(1, Slot::Lambda),
        Letter::new(3, Slot::Mu),
        Letter::new(2, Slot::Lambda),
        Letter::new(2, Slot::Mu),
    ];
    let mut expr = WordExpression::new(3);
    expr.add_term(word.clone(), random_coef(3usize.pow(8), 4)).unwrap();
    let out = normal_order(&expr, &rules).unwrap();
    assert!(out.is_normal_ordered());
    let mut want = word.clone();
    want.sort();
    for (w, _) in out.terms() {
        let mut got = w.clone();
        got.sort();
        assert_eq!(got, want);
        assert_eq!(inversions(w), 0);
    }
    assert_eq!(out.len(), 1);
}

#[test]
fn rewriting_order_does_not_change_the_result() {
    let m = build(ModelId::Su3So3);
    for (k, pt) in points(m.as_ref(), 2).iter().enumerate() {
        for layout in [Layout::Monodromy, Layout::Open(2)] {
            let rules = ExchangeRuleSet::build(m.as_ref(), pt, layout).unwrap();
            let word: Word = match layout {
                Layout::Monodromy => {
                    vec![Letter::new(1, Slot::Lambda), Letter::new(1, Slot::Lambda), Letter::new(1, Slot::Mu)]
                }
                _ => vec![Letter::new(1, Slot::Lambda), Letter::new(1, Slot::Mu), Letter::new(2, Slot::Mu)],
            };
            let mut expr = WordExpression::new(3);
            expr.add_term(word, random_coef(3usize.pow(6), 10 + k as u64)).unwrap();
            let left = normal_order_with(&expr, &rules, Strategy::Leftmost).unwrap();
            let right = normal_order_with(&expr, &rules, Strategy::Rightmost).unwrap();
            let r = left.distance(&right) / left.norm();
            assert!(r < 1e-9, "{layout:?}: {r}");
        }
    }
}

#[test]
fn one_site_transfer_commutes_exactly_at_q_one() {
    for id in ModelId::ALL {
        let m = build(id);
        let r = transfer_commutator(m.as_ref(), &classical_point(), 1).unwrap();
        assert!(r.relative < 1e-14, "{id}: {}", r.relative);
    }
}

#[test]
fn one_site_transfer_commutes_at_sampled_points() {
    for id in [ModelId::Csg, ModelId::Cp2, ModelId::Su3So3] {
        let m = build(id);
        for pt in points(m.as_ref(), 3) {
            assert!(transfer_commutator(m.as_ref(), &pt, 1).unwrap().relative < 1e-10, "{id}");
            assert!(global_relation_with(m.as_ref(), &pt, Layout::Monodromy).unwrap().relative < 1e-10, "{id}");
        }
    }
}

#[test]
fn periodic_three_site_transfer_commutes() {
    for id in [ModelId::Cp2, ModelId::Su3So3] {
        let m = build(id);
        for pt in points(m.as_ref(), 2) {
            let r = transfer_commutator_with(m.as_ref(), &pt, Layout::Periodic(3)).unwrap();
            assert!(r.relative < 1e-10, "{id}: {}", r.relative);
        }
    }
}

#[test]
fn global_relation_holds_at_q_one_on_two_sites() {
    for id in [ModelId::Csg, ModelId::Cp2, ModelId::Su3So3] {
        let m = build(id);
        let r = global_relation_check(m.as_ref(), &classical_point()).unwrap();
        assert!(r.relative < 1e-12, "{id}: {}", r.relative);
    }
}

#[test]
fn oversized_layouts_hit_the_memory_bound() {
    let pt = classical_point();
    let gl = build(ModelId::Gl44);
    assert!(matches!(transfer_commutator(gl.as_ref(), &pt, 2), Err(Error::MemoryBound(_))));
    assert!(matches!(global_relation_check(gl.as_ref(), &pt), Err(Error::MemoryBound(_))));
    let csg = build(ModelId::Csg);
    assert!(matches!(transfer_commutator_with(csg.as_ref(), &pt, Layout::Periodic(3)), Err(Error::MemoryBound(_))));
    assert!(matches!(transfer_commutator(csg.as_ref(), &pt, 3), Err(Error::Config(_))));
}

#[test]
fn expressions_reject_mismatched_terms() {
    let mut e = WordExpression::new(2);
    let w = vec![Letter::new(1, Slot::Lambda), Letter::new(1, Slot::Mu)];
    assert!(e.add_term(w.clone(), vec![c(1.0, 0.0); 15]).is_err());
    e.add_term(w.clone(), vec![c(1.0, 0.0); 16]).unwrap();
    assert!(e.add_term(vec![Letter::new(1, Slot::Mu), Letter::new(2, Slot::Mu)], vec![c(1.0, 0.0); 16]).is_err());
    e.add_term(w.clone(), vec![c(-1.0, 0.0); 16]).unwrap();
    assert_eq!(e.norm(), 0.0);
    assert_eq!(
        monodromy_word(Layout::Open(3), Slot::Mu),
        vec![Letter::new(3, Slot::Mu), Letter::new(2, Slot::Mu), Letter::new(1, Slot::Mu)]
    );
}
