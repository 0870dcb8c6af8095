//! Cross-checks against independent evaluations: log-gamma kernels and
//! brute-force summation straight from the operator definitions.

use std::num::NonZeroUsize;

use dfc_core::{
    compose_diamond_lhs, constant_sum_closed_form, delta_fractional_sum, diamond_fractional_sum,
    falling_power, kernel_weights, leibniz_rhs, nabla_fractional_sum, rising_power, DiamondParams,
    GridFunction, Order, Rational, Scalar,
};
use statrs::function::gamma::ln_gamma;

fn q(p: i64, d: i64) -> Rational {
    Rational::from_ratio(p, d).unwrap()
}

/// Γ(a)/Γ(b) for positive arguments via log-gamma.
fn lg_ratio(a: f64, b: f64) -> f64 {
    (ln_gamma(a) - ln_gamma(b)).exp()
}

/// c_j(α) = Γ(j+α) / (Γ(α) Γ(j+1))
fn lg_weight(alpha: f64, j: usize) -> f64 {
    (ln_gamma(j as f64 + alpha) - ln_gamma(alpha) - ln_gamma(j as f64 + 1.0)).exp()
}

fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1e-300)
}

#[test]
fn falling_power_half_order_against_log_gamma() {
    let want = lg_ratio(3.5, 3.0);
    let got = falling_power(&2.5, &0.5).unwrap();
    assert!(rel_close(got, want, 1e-13), "{got} vs {want}");
    // Γ(3.5) = 2.5·1.5·0.5·√π, Γ(3) = 2
    let closed = 2.5 * 1.5 * 0.5 * std::f64::consts::PI.sqrt() / 2.0;
    assert!(rel_close(want, closed, 1e-13));
    assert!(rel_close(got, 1.661_675_485_223_921_3, 1e-15));
}

#[test]
fn rising_power_half_order_against_log_gamma() {
    let got = rising_power(&1.0, &0.5).unwrap();
    assert!(rel_close(got, lg_ratio(1.5, 1.0), 1e-13));
    assert!(rel_close(got, 0.886_226_925_4, 1e-10));
}

#[test]
fn factorial_powers_off_grid_against_log_gamma() {
    for &(t, a) in &[(3.7, 1.3), (10.25, 0.4), (0.6, 0.9), (40.5, 2.5)] {
        let f = falling_power(&t, &a).unwrap();
        assert!(rel_close(f, lg_ratio(t + 1.0, t + 1.0 - a), 1e-12), "falling {t} {a}");
        let r = rising_power(&t, &a).unwrap();
        assert!(rel_close(r, lg_ratio(t + a, t), 1e-12), "rising {t} {a}");
    }
}

#[test]
fn exact_half_weights_against_log_gamma() {
    let exact = kernel_weights(&Order::new(q(1, 2)).unwrap(), NonZeroUsize::new(3).unwrap());
    assert_eq!(exact.as_slice(), &[q(1, 1), q(1, 2), q(3, 8)]);
    for (j, c) in exact.as_slice().iter().enumerate() {
        assert!(rel_close(c.to_f64(), lg_weight(0.5, j), 1e-13));
    }
}

#[test]
fn float_weights_against_log_gamma() {
    for alpha in [0.1, 0.5, 1.3, 2.5] {
        let w = kernel_weights(&Order::new(alpha).unwrap(), NonZeroUsize::new(65).unwrap());
        for (j, c) in w.as_slice().iter().enumerate() {
            let want = lg_weight(alpha, j);
            assert!(rel_close(*c, want, 1e-12), "α={alpha} j={j}: {c} vs {want}");
        }
    }
}

/// Delta sum straight from the definition, with Γ from statrs:
/// (Δ^{-α} f)(a+α+m) = Σ_{i=0}^{m} Γ(m-i+α)/(Γ(α)Γ(m-i+1)) f(a+i).
fn brute_delta(f: &[f64], alpha: f64) -> Vec<f64> {
    (0..f.len())
        .map(|m| (0..=m).map(|i| lg_weight(alpha, m - i) * f[i]).sum())
        .collect()
}

#[test]
fn exact_operators_against_brute_force_float() {
    let values = [q(2, 1), q(-1, 3), q(5, 2), q(0, 1), q(-7, 2), q(4, 3), q(1, 1), q(9, 2)];
    let fe = GridFunction::new(q(1, 3), values.to_vec()).unwrap();
    let ff: Vec<f64> = values.iter().map(Scalar::to_f64).collect();
    for (p, d) in [(1, 3), (2, 5), (1, 2), (3, 4), (5, 4)] {
        let order = Order::new(q(p, d)).unwrap();
        let want = brute_delta(&ff, p as f64 / d as f64);
        let delta = delta_fractional_sum(&fe, &order).unwrap();
        let nabla = nabla_fractional_sum(&fe, &order).unwrap();
        for m in 0..values.len() {
            let scale = 1.0 + want[m].abs();
            assert!((delta.samples()[m].to_f64() - want[m]).abs() < 1e-12 * scale);
            assert!((nabla.samples()[m].to_f64() - want[m]).abs() < 1e-12 * scale);
        }
    }
}

#[test]
fn delta_examples_by_direct_summation() {
    let ones = GridFunction::constant(q(0, 1), q(1, 1), 3).unwrap();
    let half = Order::new(q(1, 2)).unwrap();
    let out = delta_fractional_sum(&ones, &half).unwrap();
    // 1, 1 + 1/2, 1 + 1/2 + 3/8
    assert_eq!(out.samples(), &[q(1, 1), q(3, 2), q(15, 8)]);
    assert_eq!(out.base(), &q(1, 2));
    assert_eq!(constant_sum_closed_form(&half, 2, &q(1, 1)), q(15, 8));

    let ramp = GridFunction::new(q(0, 1), vec![q(0, 1), q(1, 1), q(2, 1)]).unwrap();
    // 3/8·0 + 1/2·1 + 1·2
    assert_eq!(delta_fractional_sum(&ramp, &half).unwrap().samples()[2], q(5, 2));
}

#[test]
fn diamond_equal_orders_by_direct_summation() {
    let ones = GridFunction::constant(q(0, 1), q(1, 1), 3).unwrap();
    for g in [q(0, 1), q(1, 3), q(1, 1)] {
        let p = DiamondParams::new(Order::new(q(1, 2)).unwrap(), Order::new(q(1, 2)).unwrap(), g)
            .unwrap();
        assert_eq!(
            diamond_fractional_sum(&ones, &p).unwrap().samples(),
            &[q(1, 1), q(3, 2), q(15, 8)]
        );
    }
}

#[test]
fn nested_nabla_by_hand() {
    // ∇^{-1/2} of [1, 3/2, 15/8] with weights 1, 1/2, 3/8: 15/8 + 3/4 + 3/8 = 3.
    let ones = GridFunction::constant(q(0, 1), q(1, 1), 3).unwrap();
    let half = Order::new(q(1, 2)).unwrap();
    let p = DiamondParams::new(half.clone(), half, q(0, 1)).unwrap();
    let lhs = compose_diamond_lhs(&ones, &p, &p).unwrap();
    assert_eq!(lhs.samples()[2], q(3, 1));
    assert_eq!(lhs.samples(), ones.cumulative_sum().unwrap().samples());
}

/// Product rule by brute force on both sides with float gamma weights:
/// left is the delta sum of f·g; right is the series with Newton backward
/// differences of g and higher-order delta sums of f.
#[test]
fn leibniz_against_brute_force_float() {
    let f = [1.5, -2.0, 0.25, 3.0, 1.0, -0.5];
    let g = [0.5, 2.0, -1.0, 4.0, 2.5, 1.0];
    let alpha = 0.4;
    let fg: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a * b).collect();
    let lhs = brute_delta(&fg, alpha);
    for m in 0..f.len() {
        let mut rhs = 0.0;
        for k in 0..=m {
            // binom(-α, k) = (-1)^k c_k(α)
            let binom = if k % 2 == 0 { 1.0 } else { -1.0 } * lg_weight(alpha, k);
            // ∇^k g(a+m) = Σ_i (-1)^i C(k,i) g(a+m-i)
            let diff: f64 = (0..=k)
                .map(|i| {
                    let c = (0..i).fold(1.0, |acc, r| acc * (k - r) as f64 / (r + 1) as f64);
                    let signed = if i % 2 == 0 { c } else { -c };
                    signed * g[m - i]
                })
                .sum();
            let delta = brute_delta(&f, alpha + k as f64)[m - k];
            rhs += binom * diff * delta;
        }
        assert!((lhs[m] - rhs).abs() < 1e-12 * (1.0 + lhs[m].abs()), "m={m}: {} vs {rhs}", lhs[m]);

        // The library's series agrees too.
        let fe = GridFunction::new(0.0, f.to_vec()).unwrap();
        let ge = GridFunction::new(0.0, g.to_vec()).unwrap();
        let p = DiamondParams::new(Order::new(alpha).unwrap(), Order::new(0.7).unwrap(), 1.0).unwrap();
        let lib = leibniz_rhs(&fe, &ge, &p, m).unwrap();
        assert!((lib - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
    }
}

#[test]
fn leibniz_ramp_example_both_sides() {
    // γ=1, α=1, f ≡ 1, g(a+j) = j at offset 2:
    // lhs 0+1+2 = 3; rhs 2·3 - 1·3 + 0 = 3.
    let ones = GridFunction::constant(q(0, 1), q(1, 1), 3).unwrap();
    let ramp = GridFunction::from_offsets(q(0, 1), 3, |j| q(j as i64, 1)).unwrap();
    let one = Order::new(q(1, 1)).unwrap();
    let p = DiamondParams::new(one.clone(), one.clone(), q(1, 1)).unwrap();
    let lhs = diamond_fractional_sum(&ones.multiply(&ramp).unwrap(), &p).unwrap();
    assert_eq!(lhs.samples()[2], q(3, 1));
    assert_eq!(leibniz_rhs(&ones, &ramp, &p, 2).unwrap(), q(3, 1));
    // Δ^{-2} 1 at offset 1 is c_1(2) + c_0(2) = 3.
    assert_eq!(delta_fractional_sum(&ones, &one.shifted(1)).unwrap().samples()[1], q(3, 1));
}
