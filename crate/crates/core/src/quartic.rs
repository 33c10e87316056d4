//! Real roots of polynomials of degree at most four.
//!
//! Well-separated roots come from the closed-form resolvent (Ferrari for
//! quartics, Cardano or the trigonometric form for cubics) followed by Newton
//! polishing. When the discriminant is close to zero, or a closed-form root
//! fails its residual check, the roots are instead isolated between the
//! critical points of the polynomial and refined by safeguarded bisection,
//! which also yields multiplicities.

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::tol;

/// Coefficients of `a4·x⁴ + a3·x³ + a2·x² + a1·x + a0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticCoefficients {
    pub a4: f64,
    pub a3: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl QuarticCoefficients {
    pub fn new(a4: f64, a3: f64, a2: f64, a1: f64, a0: f64) -> Self {
        Self { a4, a3, a2, a1, a0 }
    }

    /// Highest-degree coefficient first.
    pub fn as_array(&self) -> [f64; 5] {
        [self.a4, self.a3, self.a2, self.a1, self.a0]
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.as_array(), x)
    }

    pub fn scaled(&self, k: f64) -> Self {
        let [a4, a3, a2, a1, a0] = self.as_array().map(|a| a * k);
        Self::new(a4, a3, a2, a1, a0)
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.as_array().iter().fold(0.0f64, |m, a| m.max(a.abs()))
    }
}

/// A real root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: u32,
}

/// Up to four roots, without heap allocation.
pub type Roots = ArrayVec<RealRoot, 4>;

type Poly = ArrayVec<f64, 5>;
type Values = ArrayVec<f64, 4>;

/// All real roots, sorted ascending, with multiplicities.
///
/// The degree is taken from the leading non-zero coefficient; a non-zero
/// constant has no roots and the zero polynomial is an error.
pub fn real_roots(c: &QuarticCoefficients) -> Result<Vec<RealRoot>> {
    Ok(real_roots_array(c)?.to_vec())
}

/// [`real_roots`] into a fixed-capacity buffer.
pub fn real_roots_array(c: &QuarticCoefficients) -> Result<Roots> {
    for a in c.as_array() {
        ensure_finite(a, "polynomial coefficient")?;
    }
    let scale = c.scale();
    if scale == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let normalized = c.as_array().map(|a| a / scale);
    let lead = normalized.iter().position(|a| *a != 0.0).unwrap_or(4);
    Ok(roots_of(&normalized[lead..]))
}

/// Residual bound a returned root satisfies, for coefficients scaled to a
/// maximum magnitude of one.
pub fn residual_bound(x: f64) -> f64 {
    tol::ROOT_RESIDUAL * x.abs().powi(4).max(1.0)
}

fn horner(p: &[f64], x: f64) -> f64 {
    p.iter().fold(0.0, |acc, a| acc * x + a)
}

/// `p(x)` and `p'(x)` in one pass.
fn horner2(p: &[f64], x: f64) -> (f64, f64) {
    let mut v = 0.0;
    let mut d = 0.0;
    for a in p {
        d = d * x + v;
        v = v * x + a;
    }
    (v, d)
}

fn derivative(p: &[f64]) -> Poly {
    let n = p.len() - 1;
    p[..n].iter().enumerate().map(|(i, a)| a * (n - i) as f64).collect()
}

/// Roots of a polynomial whose leading coefficient is non-zero.
fn roots_of(p: &[f64]) -> Roots {
    let closed = match p.len() {
        0 | 1 => return Roots::new(),
        2 => return [simple(-p[1] / p[0])].into_iter().collect(),
        3 => quadratic(p[0], p[1], p[2]),
        4 => cubic(p),
        5 => ferrari(p),
        _ => unreachable!("degree above four"),
    };
    let bound = p[0].abs().max(1.0);
    let polished = closed.and_then(|xs| {
        let xs: Values = xs.into_iter().map(|x| polish(p, x)).collect();
        let ok = xs.iter().all(|x| horner(p, *x).abs() <= residual_bound(*x) * bound);
        ok.then_some(xs)
    });
    match polished {
        Some(xs) => merge(xs.into_iter().map(simple).collect()),
        None => bracketed(p),
    }
}

fn simple(value: f64) -> RealRoot {
    RealRoot { value, multiplicity: 1 }
}

/// Sorts and merges roots closer than the merge tolerance.
fn merge(mut roots: Roots) -> Roots {
    roots.sort_unstable_by(|a, b| a.value.total_cmp(&b.value));
    let mut out = Roots::new();
    for r in roots {
        match out.last_mut() {
            Some(last) if (r.value - last.value).abs() <= tol::ROOT_MERGE * r.value.abs().max(1.0) => {
                let m = last.multiplicity + r.multiplicity;
                last.value = (last.value * last.multiplicity as f64 + r.value * r.multiplicity as f64) / m as f64;
                last.multiplicity = m;
            }
            _ => out.push(r),
        }
    }
    out
}

fn polish(p: &[f64], x0: f64) -> f64 {
    let mut x = x0;
    let (mut fx, mut d) = horner2(p, x);
    for _ in 0..8 {
        if fx == 0.0 || d == 0.0 {
            break;
        }
        let next = x - fx / d;
        let (fn_, dn) = horner2(p, next);
        if !next.is_finite() || fn_.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = fn_;
        d = dn;
    }
    x
}

/// Closed-form quadratic roots, or `None` when the discriminant is too close
/// to zero to decide between two simple roots and a double one.
fn quadratic(a: f64, b: f64, c: f64) -> Option<Values> {
    let disc = b * b - 4.0 * a * c;
    let size = (b * b).max((4.0 * a * c).abs());
    if disc.abs() <= 1e-12 * size {
        return None;
    }
    let mut out = Values::new();
    if disc < 0.0 {
        return Some(out);
    }
    // stable form avoids cancellation
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        out.extend([0.0, 0.0]);
    } else {
        out.extend([q / a, c / q]);
    }
    Some(out)
}

fn cubic(p: &[f64]) -> Option<Values> {
    let (a, b, c) = (p[1] / p[0], p[2] / p[0], p[3] / p[0]);
    // depressed t³ + pt + q with x = t - a/3
    let shift = a / 3.0;
    let pp = b - a * a / 3.0;
    let qq = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (qq / 2.0).powi(2) + (pp / 3.0).powi(3);
    let size = (qq / 2.0).powi(2).max((pp / 3.0).powi(3).abs()).max(1.0);
    if disc.abs() <= 1e-12 * size {
        return None;
    }
    let mut out = Values::new();
    if disc > 0.0 {
        let sd = disc.sqrt();
        let u = (-qq / 2.0 + sd).cbrt();
        let v = (-qq / 2.0 - sd).cbrt();
        out.push(u + v - shift);
    } else {
        let m = 2.0 * (-pp / 3.0).sqrt();
        let arg = (3.0 * qq / (pp * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let tau = std::f64::consts::TAU;
        out.extend((0..3).map(|k| m * (phi - tau * k as f64 / 3.0).cos() - shift));
    }
    Some(out)
}

/// Largest real root of a monic cubic; always exists.
fn largest_cubic_root(a: f64, b: f64, c: f64) -> f64 {
    let p = [1.0, a, b, c];
    let x = match cubic(&p) {
        Some(xs) => xs.into_iter().fold(f64::NEG_INFINITY, f64::max),
        None => bracketed(&p).last().map(|r| r.value).unwrap_or(0.0),
    };
    polish(&p, x)
}

fn quartic_discriminant(p: &[f64]) -> f64 {
    let (a, b, c, d, e) = (p[0], p[1], p[2], p[3], p[4]);
    256.0 * a.powi(3) * e.powi(3) - 192.0 * a * a * b * d * e * e - 128.0 * a * a * c * c * e * e
        + 144.0 * a * a * c * d * d * e
        - 27.0 * a * a * d.powi(4)
        + 144.0 * a * b * b * c * e * e
        - 6.0 * a * b * b * d * d * e
        - 80.0 * a * b * c * c * d * e
        + 18.0 * a * b * c * d.powi(3)
        + 16.0 * a * c.powi(4) * e
        - 4.0 * a * c.powi(3) * d * d
        - 27.0 * b.powi(4) * e * e
        + 18.0 * b.powi(3) * c * d * e
        - 4.0 * b.powi(3) * d.powi(3)
        - 4.0 * b * b * c.powi(3) * e
        + b * b * c * c * d * d
}

fn ferrari(p: &[f64]) -> Option<Values> {
    if quartic_discriminant(p).abs() <= 1e-12 {
        return None;
    }
    let (a, b, c, d) = (p[1] / p[0], p[2] / p[0], p[3] / p[0], p[4] / p[0]);
    // depressed y⁴ + p y² + q y + r with x = y - a/4
    let shift = a / 4.0;
    let a2 = a * a;
    let pp = b - 3.0 * a2 / 8.0;
    let qq = c - a * b / 2.0 + a2 * a / 8.0;
    let rr = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;

    let mut ys = Values::new();
    if qq.abs() <= 1e-14 * (1.0 + pp.abs() + rr.abs()) {
        // biquadratic in y²
        for z in quadratic(1.0, pp, rr)? {
            if z >= 0.0 {
                let s = z.sqrt();
                ys.extend([s, -s]);
            }
        }
    } else {
        // resolvent: 8m³ + 8p m² + (2p² - 8r) m - q² = 0, take m > 0
        let m = largest_cubic_root(pp, (pp * pp - 4.0 * rr) / 4.0, -qq * qq / 8.0);
        if m.is_nan() || m <= 0.0 {
            return None;
        }
        let s = (2.0 * m).sqrt();
        let t = qq / (2.0 * s);
        // (y² + p/2 + m)² = (s y - t)²
        for (b1, c1) in [(-s, pp / 2.0 + m + t), (s, pp / 2.0 + m - t)] {
            ys.extend(quadratic(1.0, b1, c1)?);
        }
    }
    Some(ys.into_iter().map(|y| y - shift).collect())
}

/// Root isolation between consecutive critical points.
fn bracketed(p: &[f64]) -> Roots {
    let n = p.len() - 1;
    if n <= 1 {
        return roots_of(p);
    }
    let dp = derivative(p);
    let crit = roots_of(&dp);
    let bound = 1.0 + p[1..].iter().fold(0.0f64, |m, a| m.max((a / p[0]).abs()));

    let mut roots = Roots::new();
    let mut touching = Values::new();
    for cp in &crit {
        let x = cp.value;
        let fx = horner(p, x);
        // a near-real complex pair leaves a tiny extremum at its real part
        let im = tol::NEAR_REAL * (1.0 + x.abs());
        let bump = taylor_term(p, x, cp.multiplicity as usize + 1) * im.powi(cp.multiplicity as i32 + 1);
        let roundoff = 8.0 * f64::EPSILON * p.iter().fold(0.0, |acc, a| acc * x.abs() + a.abs());
        if fx.abs() <= bump.max(roundoff) {
            touching.push(x);
            roots.push(RealRoot {
                value: x,
                multiplicity: cp.multiplicity + 1,
            });
        }
    }
    let mut knots: ArrayVec<f64, 5> = ArrayVec::new();
    knots.push(-bound);
    knots.extend(crit.iter().map(|r| r.value).filter(|x| x.abs() < bound));
    knots.push(bound);
    for w in knots.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if touching.iter().any(|t| *t == lo || *t == hi) {
            continue;
        }
        let (flo, fhi) = (horner(p, lo), horner(p, hi));
        if flo == 0.0 {
            roots.push(simple(lo));
        } else if flo.signum() != fhi.signum() && fhi != 0.0 {
            roots.push(simple(bisect(p, lo, hi, flo)));
        }
    }
    if let Some(&last) = knots.last() {
        if horner(p, last) == 0.0 && !touching.contains(&last) {
            roots.push(simple(last));
        }
    }
    merge(roots)
}

/// `|p⁽ᵏ⁾(x)| / k!`
fn taylor_term(p: &[f64], x: f64, k: usize) -> f64 {
    let mut d: Poly = p.iter().copied().collect();
    let mut fact = 1.0;
    for i in 1..=k {
        if d.len() <= 1 {
            return 0.0;
        }
        d = derivative(&d);
        fact *= i as f64;
    }
    horner(&d, x).abs() / fact
}

fn bisect(p: &[f64], mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let neg_at_lo = flo < 0.0;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (fx, d) = horner2(p, x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == neg_at_lo {
            lo = x;
        } else {
            hi = x;
        }
        // Newton step when it stays inside the bracket
        let newton = x - fx / d;
        let next = if d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == x || hi - lo <= f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            return next;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn roots(a4: f64, a3: f64, a2: f64, a1: f64, a0: f64) -> Vec<RealRoot> {
        real_roots(&QuarticCoefficients::new(a4, a3, a2, a1, a0)).unwrap()
    }

    #[test]
    fn x4_minus_one() {
        let r = roots(1.0, 0.0, 0.0, 0.0, -1.0);
        assert_eq!(r.len(), 2);
        assert_abs_diff_eq!(r[0].value, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r[1].value, 1.0, epsilon = 1e-14);
        assert!(r.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn double_root_with_complex_pair() {
        // (x - 2)²(x² + 1)
        let r = roots(1.0, -4.0, 5.0, -4.0, 4.0);
        assert_eq!(r.len(), 1);
        assert_abs_diff_eq!(r[0].value, 2.0, epsilon = 1e-7);
        assert_eq!(r[0].multiplicity, 2);
    }

    #[test]
    fn lower_degrees() {
        let r = roots(0.0, 0.0, 0.0, 2.0, -3.0);
        assert_eq!(r.len(), 1);
        assert_abs_diff_eq!(r[0].value, 1.5, epsilon = 1e-15);

        let r = roots(0.0, 0.0, 1.0, -3.0, 2.0);
        assert_eq!(r.iter().map(|r| r.value).collect::<Vec<_>>().len(), 2);
        assert_abs_diff_eq!(r[0].value, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r[1].value, 2.0, epsilon = 1e-14);

        // (x - 1)³
        let r = roots(0.0, 1.0, -3.0, 3.0, -1.0);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 3);
        assert_abs_diff_eq!(r[0].value, 1.0, epsilon = 1e-5);

        assert!(roots(0.0, 0.0, 0.0, 0.0, 5.0).is_empty());
    }

    #[test]
    fn zero_and_non_finite_rejected() {
        assert_eq!(
            real_roots(&QuarticCoefficients::new(0.0, 0.0, 0.0, 0.0, 0.0)),
            Err(Error::ZeroPolynomial)
        );
        assert!(real_roots(&QuarticCoefficients::new(f64::NAN, 0.0, 0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn four_distinct_and_biquadratic() {
        // (x-1)(x+2)(x-3)(x+0.5)
        let r = roots(1.0, -1.5, -6.0, 3.5, 3.0);
        let v: Vec<f64> = r.iter().map(|r| r.value).collect();
        for (got, want) in v.iter().zip([-2.0, -0.5, 1.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        // (x² - 1)(x² - 4)
        let r = roots(1.0, 0.0, -5.0, 0.0, 4.0);
        let v: Vec<f64> = r.iter().map(|r| r.value).collect();
        for (got, want) in v.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn two_double_roots() {
        // (x - 1)²(x + 3)²
        let r = roots(1.0, 4.0, -2.0, -12.0, 9.0);
        assert_eq!(r.len(), 2);
        assert_abs_diff_eq!(r[0].value, -3.0, epsilon = 1e-7);
        assert_abs_diff_eq!(r[1].value, 1.0, epsilon = 1e-7);
        assert!(r.iter().all(|r| r.multiplicity == 2));
    }

    #[test]
    fn close_but_distinct_roots_stay_separate() {
        // (x - 1)(x - 1 - 1e-5)(x² + 1)
        let e = 1e-5;
        let (s, q) = (2.0 + e, 1.0 + e);
        // (x² - s x + q)(x² + 1)
        let r = roots(1.0, -s, q + 1.0, -s, q);
        assert_eq!(r.len(), 2);
        assert_abs_diff_eq!(r[0].value, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r[1].value, 1.0 + e, epsilon = 1e-9);
    }

    #[test]
    fn residuals_within_bound() {
        let c = QuarticCoefficients::new(0.3, -2.0, -1.1, 4.0, 0.2);
        let s = c.scale();
        for r in real_roots(&c).unwrap() {
            assert!(c.eval(r.value).abs() <= residual_bound(r.value) * s);
        }
    }
}
