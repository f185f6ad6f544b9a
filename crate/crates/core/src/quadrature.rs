//! Adaptive Gauss–Kronrod (7/15) quadrature seeded for oscillatory integrands.
//!
//! The interval is first cut at every requested split point, then each piece
//! is divided into panels no wider than half an oscillation period of the
//! hinted frequency. Panels are bisected until their error estimate meets a
//! share of the tolerance proportional to their width.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_PANELS: usize = 1 << 20;

/// Largest angular frequency `|a|` among the `sin(a x)` / `cos(a x)` factors of
/// an integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationHint(f64);

impl OscillationHint {
    pub const NONE: OscillationHint = OscillationHint(0.0);

    pub fn new(max_angular_frequency: f64) -> Result<Self> {
        if max_angular_frequency.is_finite() && max_angular_frequency >= 0.0 {
            Ok(OscillationHint(max_angular_frequency))
        } else {
            Err(Error::Argument(format!(
                "oscillation hint must be finite and nonnegative, got {max_angular_frequency}"
            )))
        }
    }

    pub fn frequency(&self) -> f64 {
        self.0
    }

    /// Widest initial panel: half an oscillation period, at most `π`.
    pub fn max_panel_width(&self) -> f64 {
        PI / self.0.max(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

// Kronrod abscissae; odd indices are the 7-point Gauss abscissae.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct PanelEstimate {
    value: f64,
    error: f64,
    // raw |K15 − G7| and ∫|g|, for the round-off floor
    raw_error: f64,
    abs_value: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        scaled = res_asc * (200.0 * scaled / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk15<F: Fn(f64) -> f64>(g: &F, a: f64, b: f64) -> Result<PanelEstimate> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let sample = |x: f64| -> Result<f64> {
        let v = g(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation {
                context: String::new(),
                x,
            })
        }
    };

    let fc = sample(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut res_abs = kronrod.abs();
    let mut f1 = [0.0; 7];
    let mut f2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (lo, hi) = (sample(center - dx)?, sample(center + dx)?);
        f1[j] = lo;
        f2[j] = hi;
        kronrod += WGK[j] * (lo + hi);
        res_abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }

    let scale = half.abs();
    let raw = ((kronrod - gauss) * half).abs();
    Ok(PanelEstimate {
        value: kronrod * half,
        error: rescale_error(raw, res_abs * scale, res_asc * scale),
        raw_error: raw,
        abs_value: res_abs * scale,
    })
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Integrates `g` over `[a, b]` with the default panel budget.
pub fn integrate<F: Fn(f64) -> f64>(
    g: F,
    a: f64,
    b: f64,
    tol: f64,
    hint: OscillationHint,
    split_at: &[f64],
) -> Result<QuadratureResult> {
    integrate_with_budget(g, a, b, tol, hint, split_at, DEFAULT_MAX_PANELS)
}

pub fn integrate_with_budget<F: Fn(f64) -> f64>(
    g: F,
    a: f64,
    b: f64,
    tol: f64,
    hint: OscillationHint,
    split_at: &[f64],
    max_panels: usize,
) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::Argument(format!("invalid integration range [{a}, {b}]")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
    }
    if let Some(&s) = split_at.iter().find(|&&s| !(s >= a && s <= b)) {
        return Err(Error::Argument(format!("split point {s} outside [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            panels: 1,
        });
    }

    let mut cuts: Vec<f64> = split_at.iter().copied().filter(|&s| s > a && s < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.insert(0, a);
    cuts.push(b);

    let max_width = hint.max_panel_width();
    let mut panels: Vec<(f64, f64)> = Vec::new();
    for piece in cuts.windows(2) {
        let (p, q) = (piece[0], piece[1]);
        let m = ((q - p) / max_width).ceil().max(1.0) as usize;
        if panels.len() + m > max_panels {
            return Err(Error::Accuracy {
                context: format!("integral over [{a}, {b}] needs more than {max_panels} initial panels"),
                value: f64::NAN,
                estimate: f64::INFINITY,
            });
        }
        let step = (q - p) / m as f64;
        for i in 0..m {
            let lo = p + step * i as f64;
            let hi = if i + 1 == m { q } else { p + step * (i + 1) as f64 };
            panels.push((lo, hi));
        }
    }

    let width = b - a;
    let phase_rate = hint.frequency().max(1.0);
    let mut value = CompensatedSum::default();
    let mut error = 0.0;
    let mut count = panels.len();
    // depth-first, left to right: fixed summation order for fixed inputs
    let mut stack: Vec<(f64, f64, PanelEstimate)> = Vec::with_capacity(panels.len());
    for &(lo, hi) in panels.iter().rev() {
        stack.push((lo, hi, gk15(&g, lo, hi)?));
    }
    while let Some((lo, hi, est)) = stack.pop() {
        let allowed = tol * (hi - lo) / width;
        let mid = 0.5 * (lo + hi);
        // rounding of the nodes shifts the phase of an oscillation by about
        // eps·|x|·freq radians
        let noise = f64::EPSILON * est.abs_value * (50.0 + lo.abs().max(hi.abs()) * phase_rate);
        let panel_error = est.error.max(noise);
        let roundoff_limited = est.raw_error <= 2.0 * noise;
        let unsplittable = !(mid > lo && mid < hi);
        if panel_error <= allowed || roundoff_limited || unsplittable {
            value.add(est.value);
            error += panel_error;
            continue;
        }
        if count + 1 > max_panels {
            let mut best = CompensatedSum::default();
            best.add(value.value());
            best.add(est.value);
            let mut estimate = error + est.error.max(f64::EPSILON * est.abs_value);
            for (_, _, e) in &stack {
                best.add(e.value);
                estimate += e.error;
            }
            return Err(Error::Accuracy {
                context: format!("integral over [{a}, {b}] exhausted {max_panels} panels"),
                value: best.value(),
                estimate,
            });
        }
        count += 1;
        let right = gk15(&g, mid, hi)?;
        let left = gk15(&g, lo, mid)?;
        stack.push((mid, hi, right));
        stack.push((lo, mid, left));
    }

    Ok(QuadratureResult {
        value: value.value(),
        error_estimate: error,
        panels: count,
    })
}
