//! Discretized circle S^1(a) inside the unit 2-sphere: the one-dimensional
//! member of the hypersphere family, used to verify the symbolic engine
//! without repeating any of its derivations.
//!
//! The domain keeps its own round metric a^2 dtheta^2 throughout; varied
//! curves are maps from that fixed circle into the sphere. The connection
//! on the pullback bundle is the ambient projection P_x(v) = v - <v,x> x.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fourier::{trapezoid_periodic, Differentiator};

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn axpy(y: &mut Vec3, alpha: f64, x: &Vec3) {
    y[0] += alpha * x[0];
    y[1] += alpha * x[1];
    y[2] += alpha * x[2];
}

/// Tangent projection onto T_x S^2 for unit x.
fn project(x: &Vec3, v: &Vec3) -> Vec3 {
    let mut out = *v;
    axpy(&mut out, -dot(v, x), x);
    out
}

fn project_field(base: &[Vec3], field: &[Vec3]) -> Vec<Vec3> {
    base.iter()
        .zip(field.iter())
        .map(|(x, v)| project(x, v))
        .collect()
}

/// Sampled immersion of the circle of radius a at height sqrt(1-a^2).
#[derive(Clone, Debug)]
pub struct CircleImmersion {
    pub n: usize,
    pub a: f64,
    pub sigma: f64,
    pub theta: Vec<f64>,
    pub points: Vec<Vec3>,
    pub normals: Vec<Vec3>,
    pub diff: Differentiator,
}

pub fn build_circle(a: f64, n: usize, sigma: f64, diff: Differentiator) -> Result<CircleImmersion> {
    if !(a > 1e-6 && a <= 1.0) {
        return Err(Error::DegenerateRadius(a));
    }
    if n < 16 || n % 2 != 0 {
        return Err(Error::BadGridSize(n));
    }
    let b = (1.0 - a * a).sqrt();
    let theta: Vec<f64> = (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect();
    let mut points = Vec::with_capacity(n);
    let mut normals = Vec::with_capacity(n);
    for &t in &theta {
        let x = [a * t.cos(), a * t.sin(), b];
        let tangent = [-t.sin(), t.cos(), 0.0];
        let nu_raw = cross(&x, &tangent);
        let norm = dot(&nu_raw, &nu_raw).sqrt();
        let nu = [
            sigma * nu_raw[0] / norm,
            sigma * nu_raw[1] / norm,
            sigma * nu_raw[2] / norm,
        ];
        points.push(x);
        normals.push(nu);
    }
    let im = CircleImmersion {
        n,
        a,
        sigma,
        theta,
        points,
        normals,
        diff,
    };
    im.self_check()?;
    Ok(im)
}

impl CircleImmersion {
    fn self_check(&self) -> Result<()> {
        let mut worst = 0.0f64;
        for (x, nu) in self.points.iter().zip(self.normals.iter()) {
            worst = worst
                .max((dot(x, x) - 1.0).abs())
                .max(dot(nu, x).abs())
                .max((dot(nu, nu) - 1.0).abs());
        }
        for (i, &t) in self.theta.iter().enumerate() {
            let tangent = [-t.sin(), t.cos(), 0.0];
            worst = worst.max(dot(&self.normals[i], &tangent).abs());
        }
        if worst > 1e-12 {
            return Err(Error::GridInstability {
                quantity: "immersion frame".into(),
                defect: worst,
            });
        }
        Ok(())
    }

    /// Length element weight for integrals over the fixed domain metric.
    fn measure(&self, integrand: &[f64]) -> f64 {
        trapezoid_periodic(integrand) * self.a
    }

    /// Principal curvature of the discrete shape operator, from
    /// A(e) = -nabla_e nu with the unit domain vector e = (1/a) d_theta.
    pub fn shape_eigenvalue(&self) -> f64 {
        let dnu = self.diff.derivative_vec(&self.normals);
        let dnu = project_field(&self.points, &dnu);
        let mut acc = 0.0;
        for (i, &t) in self.theta.iter().enumerate() {
            let tangent = [-t.sin(), t.cos(), 0.0];
            acc += -dot(&dnu[i], &tangent) / self.a;
        }
        acc / self.n as f64
    }

    /// Connection Laplacian (positive spectrum) of a section tangent to the
    /// ambient sphere along the unvaried circle.
    pub fn rough_laplacian(&self, section: &[Vec3]) -> Result<Vec<Vec3>> {
        let defect = section
            .iter()
            .zip(self.points.iter())
            .map(|(s, x)| dot(s, x).abs())
            .fold(0.0, f64::max);
        if defect > 1e-9 {
            return Err(Error::NonTangentInput(defect));
        }
        Ok(rough_laplacian_at(
            &self.points,
            section,
            self.a,
            &self.diff,
        ))
    }

    /// f = cos(j theta), normalized so int f^2 dv = 1; j = 0 gives the
    /// constant mode.
    pub fn normalized_mode(&self, j: u64) -> Vec<f64> {
        let scale = if j == 0 {
            1.0 / (2.0 * PI * self.a).sqrt()
        } else {
            1.0 / (PI * self.a).sqrt()
        };
        self.theta
            .iter()
            .map(|&t| scale * (j as f64 * t).cos())
            .collect()
    }

    pub fn eigenvalue(&self, j: u64) -> f64 {
        (j as f64 / self.a).powi(2)
    }

    /// The three bundle-norm integrals of f nu for the mode j.
    pub fn bundle_norms(&self, j: u64) -> Result<BundleNormValues> {
        let f = self.normalized_mode(j);
        let section: Vec<Vec3> = self
            .normals
            .iter()
            .zip(f.iter())
            .map(|(nu, &fi)| [fi * nu[0], fi * nu[1], fi * nu[2]])
            .collect();
        let l1 = self.rough_laplacian(&section)?;
        let l2 = self.rough_laplacian(&l1)?;
        let sq = |field: &[Vec3]| -> Vec<f64> { field.iter().map(|v| dot(v, v)).collect() };
        // nabla_e with the unit domain vector e = (1/a) d_theta
        let dl1 = project_field(&self.points, &self.diff.derivative_vec(&l1));
        let grad_sq: Vec<f64> = dl1.iter().map(|v| dot(v, v) / (self.a * self.a)).collect();
        Ok(BundleNormValues {
            lambda: self.eigenvalue(j),
            first: self.measure(&sq(&l1)),
            second: self.measure(&grad_sq),
            third: self.measure(&sq(&l2)),
        })
    }

    /// Geodesic normal variation cos(t f) x + sin(t f) nu; stays on the
    /// sphere exactly.
    pub fn geodesic_variation(&self, f: &[f64], t: f64) -> Vec<Vec3> {
        self.points
            .iter()
            .zip(self.normals.iter())
            .zip(f.iter())
            .map(|((x, nu), &fi)| {
                let (s, c) = (t * fi).sin_cos();
                [
                    c * x[0] + s * nu[0],
                    c * x[1] + s * nu[1],
                    c * x[2] + s * nu[2],
                ]
            })
            .collect()
    }

    /// Fourth-order energy of a curve sampled on this domain circle:
    /// one half the squared Laplacian of the tension field, integrated
    /// against the fixed domain measure.
    pub fn energy4_of(&self, curve: &[Vec3]) -> Result<f64> {
        let speed_min = self
            .diff
            .derivative_vec(curve)
            .iter()
            .map(|v| dot(v, v).sqrt())
            .fold(f64::INFINITY, f64::min);
        if speed_min < 1e-8 {
            return Err(Error::DegenerateSpeed(speed_min));
        }
        let a2 = self.a * self.a;
        let d2 = self.diff.derivative_vec(&self.diff.derivative_vec(curve));
        let tau: Vec<Vec3> = curve
            .iter()
            .zip(d2.iter())
            .map(|(x, w)| {
                let mut p = project(x, w);
                p[0] /= a2;
                p[1] /= a2;
                p[2] /= a2;
                p
            })
            .collect();
        let lap_tau = rough_laplacian_at(curve, &tau, self.a, &self.diff);
        let integrand: Vec<f64> = lap_tau.iter().map(|v| 0.5 * dot(v, v)).collect();
        Ok(self.measure(&integrand))
    }

    pub fn energy4(&self) -> Result<f64> {
        self.energy4_of(&self.points)
    }

    /// Central-difference first variation of the energy along the geodesic
    /// normal variation generated by f.
    pub fn first_variation(&self, f: &[f64], h: f64) -> Result<f64> {
        if h <= 0.0 {
            return Err(Error::BadStep(h));
        }
        let plus = self.energy4_of(&self.geodesic_variation(f, h))?;
        let minus = self.energy4_of(&self.geodesic_variation(f, -h))?;
        Ok((plus - minus) / (2.0 * h))
    }

    /// Second difference of the energy at mode j, optionally with one
    /// Richardson step over (h, h/2).
    pub fn second_variation(&self, j: u64, h: f64, richardson: bool) -> Result<SecondVariation> {
        if h <= 0.0 {
            return Err(Error::BadStep(h));
        }
        let f = self.normalized_mode(j);
        let e0 = self.energy4()?;
        let q = |hh: f64| -> Result<f64> {
            let plus = self.energy4_of(&self.geodesic_variation(&f, hh))?;
            let minus = self.energy4_of(&self.geodesic_variation(&f, -hh))?;
            Ok((plus - 2.0 * e0 + minus) / (hh * hh))
        };
        let q_h = q(h)?;
        let q_half = q(h / 2.0)?;
        let value = if richardson {
            (4.0 * q_half - q_h) / 3.0
        } else {
            q_h
        };
        Ok(SecondVariation {
            lambda: self.eigenvalue(j),
            value,
            raw_h: q_h,
            raw_half: q_half,
        })
    }
}

/// Connection Laplacian along an arbitrary base curve on the sphere, with
/// the fixed domain metric a^2 dtheta^2:
/// Lap s = -(1/a^2) P (d_theta (P (d_theta s))).
pub fn rough_laplacian_at(
    base: &[Vec3],
    section: &[Vec3],
    a: f64,
    diff: &Differentiator,
) -> Vec<Vec3> {
    let ds = project_field(base, &diff.derivative_vec(section));
    let d2s = project_field(base, &diff.derivative_vec(&ds));
    let a2 = a * a;
    d2s.iter()
        .map(|v| [-v[0] / a2, -v[1] / a2, -v[2] / a2])
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct BundleNormValues {
    pub lambda: f64,
    pub first: f64,
    pub second: f64,
    pub third: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct SecondVariation {
    pub lambda: f64,
    pub value: f64,
    pub raw_h: f64,
    pub raw_half: f64,
}
