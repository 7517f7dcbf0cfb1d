use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::convert::Infallible;
use std::fmt::Display;

use super::{QuadError, QuadratureResult, QuadratureSpec};

// abscissae and weights of the 21-point Kronrod rule and its embedded 10-point Gauss rule (QUADPACK qk21)
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_886_556,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// weights of the Gauss nodes XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // rounding floor of the error estimate
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn sample<F, E>(f: &mut F, x: f64) -> Result<f64, QuadError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: Display,
{
    match f(x) {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(QuadError::PoisonedEvaluation { at: x }),
        Err(e) => Err(QuadError::Integrand {
            at: x,
            message: e.to_string(),
        }),
    }
}

fn kronrod21<F, E>(f: &mut F, a: f64, b: f64) -> Result<Panel, QuadError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: Display,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = sample(f, center)?;
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs_sum = kronrod.abs();
    let mut values = [(0.0, 0.0); 10];
    for (j, &x) in XGK[..10].iter().enumerate() {
        let dx = half * x;
        let f1 = sample(f, center - dx)?;
        let f2 = sample(f, center + dx)?;
        values[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for (j, (f1, f2)) in values.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        floor,
    })
}

/// Adaptive integral of a fallible integrand over `[a, b]`.
///
/// Non-finite integrand values abort with [`QuadError::PoisonedEvaluation`].
/// Exhausting `max_panels` returns the best value with `converged = false`.
pub fn try_integrate_finite<F, E>(
    mut f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult, QuadError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: Display,
{
    spec.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadError::InvalidInterval { a, b });
    }
    let first = kronrod21(&mut f, a, b)?;
    let mut evaluations = 21;
    let mut value = first.value;
    let mut error = first.error;
    let mut floor = first.floor;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut converged = error <= spec.tolerance(value);
    while !converged && heap.len() < spec.max_panels {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // panel cannot be split further in floating point
            heap.push(worst);
            break;
        }
        let left = kronrod21(&mut f, worst.a, mid)?;
        let right = kronrod21(&mut f, mid, worst.b)?;
        evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            // resum to shed accumulated cancellation in the running totals
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
            floor = heap.iter().map(|p| p.floor).sum();
        }
        converged = error <= spec.tolerance(value);
        if !converged && error <= 2.0 * floor {
            // remaining error is rounding; further bisection cannot reduce it
            break;
        }
    }
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let error: f64 = heap.iter().map(|p| p.error).sum();
    Ok(QuadratureResult {
        value,
        error_estimate: error,
        evaluations,
        converged: error <= spec.tolerance(value),
    })
}

/// Adaptive integral of `f` over `[a, b]`.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadratureResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    try_integrate_finite(|x| Ok::<f64, Infallible>(f(x)), a, b, spec)
}

/// `∫_a^∞ f(s) ds` through the map `s = a + t / (1 - t)`, for integrands that
/// decay without oscillating.
pub fn try_integrate_halfline<F, E>(mut f: F, a: f64, spec: &QuadratureSpec) -> Result<QuadratureResult, QuadError>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: Display,
{
    try_integrate_finite(
        |t: f64| {
            let w = 1.0 - t;
            let s = a + t / w;
            if !s.is_finite() {
                return Ok(0.0);
            }
            f(s).map(|v| v / (w * w))
        },
        0.0,
        1.0,
        spec,
    )
}

pub fn integrate_halfline<F>(f: F, a: f64, spec: &QuadratureSpec) -> Result<QuadratureResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    try_integrate_halfline(|x| Ok::<f64, Infallible>(f(x)), a, spec)
}
