//! Random node distances: satellite to relay, relay to ground user, relay to
//! aerial receiver. Every density here is piecewise polynomial, which the
//! analytic evaluators exploit; [`PiecewiseDensity`] exposes that structure.

use crate::{require, Result};
use rand::Rng;

/// `coeff · x^power`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coeff: f64,
    pub power: u32,
}

impl Monomial {
    fn eval(&self, x: f64) -> f64 {
        self.coeff * x.powi(self.power as i32)
    }

    fn antiderivative(&self, x: f64) -> f64 {
        let p = self.power as i32 + 1;
        self.coeff * x.powi(p) / p as f64
    }
}

/// A polynomial on `[lo, hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub terms: Vec<Monomial>,
}

impl Piece {
    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    /// `∫_lo^x` of the polynomial.
    fn integral_to(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.antiderivative(x) - t.antiderivative(self.lo)).sum()
    }
}

/// Density made of contiguous polynomial pieces, zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseDensity {
    pieces: Vec<Piece>,
}

impl PiecewiseDensity {
    fn new(pieces: Vec<Piece>) -> Self {
        Self { pieces: pieces.into_iter().filter(|p| p.hi > p.lo).collect() }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn support(&self) -> (f64, f64) {
        (self.pieces[0].lo, self.pieces[self.pieces.len() - 1].hi)
    }

    /// Left-closed, right-open pieces; the upper end of the support belongs to the last piece.
    pub fn pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(lo..=hi).contains(&x) {
            return 0.0;
        }
        let piece = self.pieces.iter().find(|p| x < p.hi).unwrap_or(&self.pieces[self.pieces.len() - 1]);
        piece.eval(x)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for p in &self.pieces {
            if x <= p.lo {
                break;
            }
            acc += p.integral_to(x.min(p.hi));
        }
        acc.clamp(0.0, 1.0)
    }
}

/// Satellite uniformly placed on a spherical shell seen from the relay.
/// All lengths share one unit; the caller picks it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitGeometry {
    earth_radius: f64,
    relay_altitude: f64,
    min_distance: f64,
}

impl OrbitGeometry {
    pub fn new(earth_radius: f64, relay_altitude: f64, min_distance: f64) -> Result<Self> {
        require(earth_radius > 0.0 && earth_radius.is_finite(), "earth_radius", earth_radius, "must be positive")?;
        require(relay_altitude >= 0.0 && relay_altitude.is_finite(), "relay_altitude", relay_altitude, "must be non-negative")?;
        require(min_distance > 0.0 && min_distance.is_finite(), "min_distance", min_distance, "must be positive")?;
        Ok(Self { earth_radius, relay_altitude, min_distance })
    }

    /// Relay distance from the Earth's centre.
    pub fn centre_distance(&self) -> f64 {
        self.earth_radius + self.relay_altitude
    }

    pub fn min_distance(&self) -> f64 {
        self.min_distance
    }

    pub fn max_distance(&self) -> f64 {
        (self.min_distance.powi(2) + 2.0 * self.centre_distance() * self.min_distance).sqrt()
    }

    pub fn density(&self) -> PiecewiseDensity {
        let coeff = 1.0 / (self.centre_distance() * self.min_distance);
        PiecewiseDensity::new(vec![Piece {
            lo: self.min_distance,
            hi: self.max_distance(),
            terms: vec![Monomial { coeff, power: 1 }],
        }])
    }

    pub fn pdf(&self, w: f64) -> Result<f64> {
        require(w.is_finite(), "satellite distance", w, "must be finite")?;
        if w < self.min_distance || w > self.max_distance() {
            return Ok(0.0);
        }
        Ok(w / (self.centre_distance() * self.min_distance))
    }

    pub fn cdf(&self, w: f64) -> f64 {
        let wm = self.min_distance;
        ((w * w - wm * wm) / (2.0 * self.centre_distance() * wm)).clamp(0.0, 1.0)
    }

    /// Inverse CDF at `u ∈ [0, 1]`.
    pub fn quantile(&self, u: f64) -> f64 {
        let wm = self.min_distance;
        (wm * wm + 2.0 * self.centre_distance() * wm * u).sqrt()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(rng.random::<f64>())
    }
}

/// Which ordering of `h1 / cos φ` and `h2` the truncated cone has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeCase {
    /// `h1 / cos φ < h2`
    Shallow,
    /// `h1 / cos φ ≥ h2`
    Deep,
}

/// Relay hovering at `altitude` over a ground disc of `disc_radius`, with the
/// aerial receiver uniform in its beam cone between depths `near` and `far`.
/// Lengths in one unit; `half_angle` in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeGeometry {
    pub altitude: f64,
    pub disc_radius: f64,
    pub near: f64,
    pub far: f64,
    pub half_angle: f64,
}

impl ConeGeometry {
    pub fn new(altitude: f64, disc_radius: f64, near: f64, far: f64, half_angle: f64) -> Result<Self> {
        require(altitude > 0.0 && altitude.is_finite(), "altitude", altitude, "must be positive")?;
        require(disc_radius > 0.0 && disc_radius.is_finite(), "disc_radius", disc_radius, "must be positive")?;
        require(near > 0.0, "near", near, "must be positive")?;
        require(far > near && far.is_finite(), "far", far, "must exceed the near depth")?;
        require(
            half_angle > 0.0 && half_angle < std::f64::consts::FRAC_PI_2,
            "half_angle",
            half_angle,
            "must lie in (0, π/2)",
        )?;
        Ok(Self { altitude, disc_radius, near, far, half_angle })
    }

    pub fn gu_density(&self) -> PiecewiseDensity {
        let (h, l) = (self.altitude, self.disc_radius);
        PiecewiseDensity::new(vec![Piece {
            lo: h,
            hi: (h * h + l * l).sqrt(),
            terms: vec![Monomial { coeff: 2.0 / (l * l), power: 1 }],
        }])
    }

    pub fn gu_quantile(&self, u: f64) -> f64 {
        (self.altitude.powi(2) + self.disc_radius.powi(2) * u).sqrt()
    }

    pub fn sample_gu<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.gu_quantile(rng.random::<f64>())
    }

    pub fn cone_case(&self) -> ConeCase {
        if self.near / self.half_angle.cos() < self.far {
            ConeCase::Shallow
        } else {
            ConeCase::Deep
        }
    }

    /// Density of the relay-to-receiver distance on `[near, far / cos φ]`.
    ///
    /// The three branches are the spherical-shell areas cut by the cone and the
    /// two depth planes, over the cone volume `π tan²φ (far³ − near³) / 3`.
    pub fn arx_density(&self) -> PiecewiseDensity {
        let (h1, h2) = (self.near, self.far);
        let c = self.half_angle.cos();
        let norm = 6.0 / (self.half_angle.tan().powi(2) * (h2.powi(3) - h1.powi(3)));
        let m = |coeff: f64, power: u32| Monomial { coeff: norm * coeff, power };
        let rising = vec![m(1.0, 2), m(-h1, 1)];
        let falling = vec![m(h2, 1), m(-c, 2)];
        let pieces = match self.cone_case() {
            ConeCase::Shallow => vec![
                Piece { lo: h1, hi: h1 / c, terms: rising },
                Piece { lo: h1 / c, hi: h2, terms: vec![m(1.0 - c, 2)] },
                Piece { lo: h2, hi: h2 / c, terms: falling },
            ],
            ConeCase::Deep => vec![
                Piece { lo: h1, hi: h2, terms: rising },
                Piece { lo: h2, hi: h1 / c, terms: vec![m(h2 - h1, 1)] },
                Piece { lo: h1 / c, hi: h2 / c, terms: falling },
            ],
        };
        PiecewiseDensity::new(pieces)
    }

    /// A point uniform in the truncated cone from two uniforms: depth by
    /// inverting `∝ z²`, then a uniform point on the disc at that depth.
    pub fn arx_from_uniforms(&self, u_depth: f64, u_radius: f64) -> f64 {
        let (a, b) = (self.near.powi(3), self.far.powi(3));
        let z = (a + (b - a) * u_depth).cbrt();
        let r = z * self.half_angle.tan() * u_radius.sqrt();
        (z * z + r * r).sqrt()
    }

    pub fn sample_arx<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let ud = rng.random::<f64>();
        let ur = rng.random::<f64>();
        self.arx_from_uniforms(ud, ur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn orbit_km() -> OrbitGeometry {
        OrbitGeometry::new(6371.0, 0.8, 400.0).unwrap()
    }

    fn cone() -> ConeGeometry {
        ConeGeometry::new(800.0, 250.0, 400.0, 500.0, PI / 12.0).unwrap()
    }

    #[test]
    fn satellite_pdf_at_support_edges() {
        let g = orbit_km();
        assert!((g.pdf(400.0).unwrap() - 1.0 / 6371.8).abs() < 1e-15);
        assert!((g.pdf(400.0).unwrap() - 1.5694e-4).abs() < 1e-8);
        assert_eq!(g.pdf(399.0).unwrap(), 0.0);
        assert!(g.pdf(f64::NAN).is_err());
        assert!((g.max_distance() - 2292.9).abs() < 0.05);
        assert_eq!(g.quantile(0.0), 400.0);
        assert_eq!(g.cdf(g.min_distance()), 0.0);
        assert_eq!(g.cdf(g.max_distance()), 1.0);
    }

    #[test]
    fn gu_pdf_values() {
        let c = cone();
        let d = c.gu_density();
        assert!((d.pdf(800.0) - 0.0256).abs() < 1e-15);
        assert_eq!(d.pdf(839.0), 0.0);
        assert!((c.gu_quantile(1.0) - 838.15).abs() < 0.01);
        assert_eq!(c.gu_quantile(0.0), 800.0);
    }

    #[test]
    fn cone_case_selection() {
        assert_eq!(cone().cone_case(), ConeCase::Shallow);
        // 480 / cos 15° ≈ 496.9 is still the shallow ordering.
        let still_shallow = ConeGeometry::new(800.0, 250.0, 480.0, 500.0, PI / 12.0).unwrap();
        assert_eq!(still_shallow.cone_case(), ConeCase::Shallow);
        let deep = ConeGeometry::new(800.0, 250.0, 490.0, 500.0, PI / 12.0).unwrap();
        assert_eq!(deep.cone_case(), ConeCase::Deep);
        assert_eq!(cone().arx_density().pdf(400.0), 0.0);
    }

    #[test]
    fn degenerate_cone_gives_cube_uniform_depth() {
        let g = ConeGeometry::new(800.0, 250.0, 400.0, 500.0, 1e-9).unwrap();
        for &u in &[0.0, 0.3, 0.9] {
            let z = g.arx_from_uniforms(u, 0.77);
            let expect = (400f64.powi(3) + u * (500f64.powi(3) - 400f64.powi(3))).cbrt();
            assert!((z - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_geometry_is_rejected() {
        assert!(ConeGeometry::new(800.0, 250.0, 500.0, 400.0, 0.2).is_err());
        assert!(ConeGeometry::new(800.0, 250.0, 400.0, 500.0, 1.6).is_err());
        assert!(OrbitGeometry::new(6371.0, 0.8, 0.0).is_err());
    }

    /// Both cone cases coincide when `near / cos φ = far`.
    #[test]
    fn cone_cases_agree_at_the_boundary() {
        let phi = PI / 12.0;
        let near = 500.0 * phi.cos();
        let shallow = ConeGeometry::new(800.0, 250.0, near * (1.0 - 1e-12), 500.0, phi).unwrap();
        let deep = ConeGeometry::new(800.0, 250.0, near * (1.0 + 1e-12), 500.0, phi).unwrap();
        assert_eq!(shallow.cone_case(), ConeCase::Shallow);
        assert_eq!(deep.cone_case(), ConeCase::Deep);
        for i in 1..50 {
            let u = near + i as f64 * (500.0 / phi.cos() - near) / 50.0;
            let (a, b) = (shallow.arx_density().pdf(u), deep.arx_density().pdf(u));
            assert!((a - b).abs() < 1e-6 * a.abs().max(1e-6), "u={u}: {a} vs {b}");
        }
    }

    proptest! {
        #[test]
        fn arx_density_is_normalized_and_continuous(
            near in 10.0f64..500.0, depth in 1.0f64..500.0, phi in 0.05f64..1.4,
        ) {
            let g = ConeGeometry::new(800.0, 250.0, near, near + depth, phi).unwrap();
            let d = g.arx_density();
            let (_, hi) = d.support();
            prop_assert!((d.cdf(hi) - 1.0).abs() < 1e-9);
            for w in d.pieces().windows(2) {
                let (left, right) = (w[0].eval(w[0].hi), w[1].eval(w[1].lo));
                prop_assert!((left - right).abs() <= 1e-9 * left.abs().max(right.abs()).max(1e-12));
            }
            for p in d.pieces() {
                let mid = 0.5 * (p.lo + p.hi);
                prop_assert!(p.eval(mid) >= 0.0);
            }
        }

        #[test]
        fn arx_samples_stay_in_support(ud in 0.0f64..1.0, ur in 0.0f64..1.0) {
            let g = cone();
            let u = g.arx_from_uniforms(ud, ur);
            prop_assert!(u >= g.near - 1e-9 && u <= g.far / g.half_angle.cos() + 1e-9);
        }

        #[test]
        fn satellite_quantile_inverts_cdf(u in 0.0f64..1.0) {
            let g = orbit_km();
            prop_assert!((g.cdf(g.quantile(u)) - u).abs() < 1e-12);
        }
    }
}
