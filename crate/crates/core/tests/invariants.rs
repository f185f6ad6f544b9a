use std::f64::consts::{FRAC_PI_2, PI};

use fourier_lab::dirichlet::{limit_sweep, riemann_lebesgue, RangeSpec};
use fourier_lab::fourier::{
    closed_form_coefficients, partial_sum_kernel_raw, partial_sum_kernel_split, partial_sum_periodic,
    partial_sum_series_exact, KernelOrder,
};
use fourier_lab::{parse_function, Exact, PiecewiseFunction};

const CORPUS: [&str; 6] = [
    "1",
    "x",
    "[0,1pi): 1 ; [1pi,2pi]: 0",
    "exp(-x)",
    "cos(x)",
    "[0,1): 1 ; [1,5/2): x^2 ; [5/2,2pi]: exp(-x) + sin(2*x)",
];

fn f(text: &str) -> PiecewiseFunction {
    parse_function(text).unwrap()
}

#[test]
fn routes_agree_on_a_fine_grid() {
    for text in CORPUS {
        let g = f(text);
        let c = closed_form_coefficients(&g, 50).unwrap();
        for n in [0, 1, 7, 20, 50] {
            let n = KernelOrder::new(n).unwrap();
            for j in 1..=16 {
                let x = Exact::pi_multiple(2 * j, 17);
                let xf = x.to_f64();
                let series = partial_sum_series_exact(&c, n, x).unwrap();
                let raw = partial_sum_kernel_raw(&g, n, xf, 1e-10).unwrap();
                let split = partial_sum_kernel_split(&g, n, xf, 1e-10).unwrap();
                let periodic = partial_sum_periodic(&g, n, xf, 1e-10).unwrap();
                for (a, b) in [(series, raw), (series, split), (split, periodic)] {
                    let bound = 10.0 * (a.error_estimate + b.error_estimate);
                    assert!(
                        (a.value - b.value).abs() <= bound,
                        "{text} n={n} x={x}: {} {} vs {} {}",
                        a.method,
                        a.value,
                        b.method,
                        b.value
                    );
                }
            }
        }
    }
}

/// Spread must shrink with `N`; integrals that are constant in `N` only carry roundoff.
#[test]
fn spread_decays() {
    let ranges = [
        RangeSpec::interior(FRAC_PI_2).unwrap(),
        RangeSpec::FullPi,
        RangeSpec::multi_pi(2).unwrap(),
        RangeSpec::unit_nodes(2).unwrap(),
    ];
    for text in CORPUS {
        let g = f(text);
        for range in ranges {
            if matches!(range, RangeSpec::UnitNodes { .. }) && !g.jumps_in(0.0, 2.0).is_empty() {
                continue;
            }
            let early = limit_sweep(&g, range, 50, 8, 1e-11).unwrap().spread;
            let late = limit_sweep(&g, range, 400, 8, 1e-11).unwrap().spread;
            assert!(
                late < early || (late <= 1e-9 && early <= 1e-9),
                "{text} {range:?}: spread {early:e} -> {late:e}"
            );
        }
    }
}

#[test]
fn riemann_lebesgue_bound_halves() {
    for text in ["x", "exp(-x)", "cos(x)", "x^3 - 2*x^2 + 1/3", "[0,1pi]: x^2"] {
        let g = f(text);
        let a = if text.starts_with('[') { PI } else { 1.0 };
        let c = (10..=80)
            .step_by(10)
            .map(|n| n as f64 * riemann_lebesgue(&g, a, n, 1e-12).unwrap().value.abs())
            .fold(0.0, f64::max);
        for n in [10u32, 20, 40, 80, 160, 320] {
            let v = riemann_lebesgue(&g, a, n, 1e-12).unwrap().value.abs();
            assert!(v <= c / n as f64 * (1.0 + 1e-9) + 1e-12, "{text} N={n}: {v} > {c}/N");
        }
    }
}
