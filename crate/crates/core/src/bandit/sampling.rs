use rand::Rng;
use rand_distr::StandardNormal;

/// Gamma(shape, 1) draw by the Marsaglia–Tsang squeeze method.
///
/// Shapes below one are boosted: `Gamma(k) = Gamma(k + 1) U^(1/k)`.
pub fn gamma_sample<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    debug_assert!(shape > 0.0);
    if shape < 1.0 {
        let u: f64 = rng.random();
        return gamma_sample(shape + 1.0, rng) * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u: f64 = rng.random();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d * v;
        }
        if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// Beta(a, b) draw as `X / (X + Y)` with independent Gamma(a) and Gamma(b).
pub fn beta_sample<R: Rng + ?Sized>(a: u64, b: u64, rng: &mut R) -> f64 {
    debug_assert!(a >= 1 && b >= 1);
    let x = gamma_sample(a as f64, rng);
    let y = gamma_sample(b as f64, rng);
    x / (x + y)
}
