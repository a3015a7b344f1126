//! Quadrature oracle on the two-dimensional hypersphere S^2(1/2) inside
//! the unit 3-sphere, for the curvature-term integrand.
//!
//! The latitude-longitude grid covers the full torus (theta, phi) in
//! [0, 2pi)^2 with theta offset half a step, so no sample sits on a pole
//! and every smooth field on the sphere extends to a smooth doubly
//! periodic field (the double cover identifies (theta, phi) with
//! (2pi - theta, phi + pi)). Both derivatives are then plain spectral
//! derivatives, and integrals use exact Fourier weights for |sin theta|,
//! halving the double cover.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fourier::{fourier_coefficients, Differentiator};

pub type Vec4 = [f64; 4];

fn dot4(a: &Vec4, b: &Vec4) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Normal-variation test modes: restrictions of linear coordinates, the
/// first eigenvalue's worth of spherical harmonics, plus the constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereMode {
    Constant,
    /// cos(theta): the polar first harmonic.
    Polar,
    /// sin(theta) cos(phi): exercises the longitude derivatives.
    Azimuthal,
}

pub struct SphereGrid {
    /// Latitude samples over the full torus: 2 * nt rows.
    pub nt: usize,
    pub np: usize,
    pub rho: f64,
    theta: Vec<f64>,
    points: Vec<Vec4>,
    normals: Vec<Vec4>,
    sin_t: Vec<f64>,
    cos_t: Vec<f64>,
    cot_t: Vec<f64>,
    diff: Differentiator,
}

impl SphereGrid {
    /// `nt` latitude rows per hemisphere-to-hemisphere sweep (the torus
    /// gets 2 nt), `np` longitude columns (must be even).
    pub fn new(nt: usize, np: usize) -> Result<Self> {
        if nt < 8 || np < 16 || np % 2 != 0 {
            return Err(Error::BadGridSize(nt.min(np)));
        }
        let rho: f64 = 0.5;
        let height = (1.0 - rho * rho).sqrt();
        let rows = 2 * nt;
        let theta: Vec<f64> = (0..rows)
            .map(|j| (j as f64 + 0.5) * PI / nt as f64)
            .collect();
        let phi: Vec<f64> = (0..np).map(|l| 2.0 * PI * l as f64 / np as f64).collect();
        let mut points = Vec::with_capacity(rows * np);
        let mut normals = Vec::with_capacity(rows * np);
        for &t in &theta {
            for &p in &phi {
                let (st, ct) = t.sin_cos();
                let (sp, cp) = p.sin_cos();
                points.push([rho * st * cp, rho * st * sp, rho * ct, height]);
                normals.push([height * st * cp, height * st * sp, height * ct, -rho]);
            }
        }
        let sin_t: Vec<f64> = theta.iter().map(|t| t.sin()).collect();
        let cos_t: Vec<f64> = theta.iter().map(|t| t.cos()).collect();
        let cot_t = theta
            .iter()
            .map(|t| t.cos() / t.sin())
            .collect();
        let grid = SphereGrid {
            nt,
            np,
            rho,
            theta,
            points,
            normals,
            sin_t,
            cos_t,
            cot_t,
            diff: Differentiator::spectral(),
        };
        grid.self_check()?;
        Ok(grid)
    }

    fn rows(&self) -> usize {
        2 * self.nt
    }

    fn self_check(&self) -> Result<()> {
        let area = self.integrate(&vec![1.0; self.points.len()]);
        let expected = 4.0 * PI * self.rho * self.rho;
        let defect = (area - expected).abs();
        if defect > 1e-10 {
            return Err(Error::GridInstability {
                quantity: "surface area".into(),
                defect,
            });
        }
        let f = self.mode_samples(SphereMode::Polar);
        let lap = self.scalar_laplacian(&f);
        let lambda = 2.0 / (self.rho * self.rho);
        let defect = f
            .iter()
            .zip(lap.iter())
            .map(|(fi, li)| (li - lambda * fi).abs())
            .fold(0.0, f64::max);
        if defect > 1e-8 {
            return Err(Error::GridInstability {
                quantity: "eigenfunction residual".into(),
                defect,
            });
        }
        Ok(())
    }

    fn d_theta(&self, field: &[f64]) -> Vec<f64> {
        let rows = self.rows();
        let np = self.np;
        let mut out = vec![0.0; rows * np];
        let mut column = vec![0.0; rows];
        for l in 0..np {
            for j in 0..rows {
                column[j] = field[j * np + l];
            }
            let dc = self.diff.derivative(&column);
            for j in 0..rows {
                out[j * np + l] = dc[j];
            }
        }
        out
    }

    fn d_phi(&self, field: &[f64]) -> Vec<f64> {
        let rows = self.rows();
        let np = self.np;
        let mut out = vec![0.0; rows * np];
        for j in 0..rows {
            let row = &field[j * np..(j + 1) * np];
            let dr = self.diff.derivative(row);
            out[j * np..(j + 1) * np].copy_from_slice(&dr);
        }
        out
    }

    fn d_theta4(&self, field: &[Vec4]) -> Vec<Vec4> {
        self.per_component(field, |comp| self.d_theta(comp))
    }

    fn d_phi4(&self, field: &[Vec4]) -> Vec<Vec4> {
        self.per_component(field, |comp| self.d_phi(comp))
    }

    fn per_component<F: Fn(&[f64]) -> Vec<f64>>(&self, field: &[Vec4], op: F) -> Vec<Vec4> {
        let n = field.len();
        let mut out = vec![[0.0; 4]; n];
        let mut comp = vec![0.0; n];
        for d in 0..4 {
            for (i, v) in field.iter().enumerate() {
                comp[i] = v[d];
            }
            let dc = op(&comp);
            for (i, v) in dc.into_iter().enumerate() {
                out[i][d] = v;
            }
        }
        out
    }

    fn project(&self, field: &[Vec4]) -> Vec<Vec4> {
        field
            .iter()
            .zip(self.points.iter())
            .map(|(v, x)| {
                let c = dot4(v, x);
                [v[0] - c * x[0], v[1] - c * x[1], v[2] - c * x[2], v[3] - c * x[3]]
            })
            .collect()
    }

    fn row_of(&self, idx: usize) -> usize {
        idx / self.np
    }

    /// Connection Laplacian of a section of the pullback tangent bundle,
    /// positive spectrum, via the parametric form of d*d:
    /// -(1/rho^2) [ P dth (P dth s) + (1/sin^2) P dph (P dph s)
    ///              + cot P dth s ].
    pub fn bundle_laplacian(&self, section: &[Vec4]) -> Result<Vec<Vec4>> {
        let defect = section
            .iter()
            .zip(self.points.iter())
            .map(|(s, x)| dot4(s, x).abs())
            .fold(0.0, f64::max);
        if defect > 1e-9 {
            return Err(Error::NonTangentInput(defect));
        }
        let dth = self.project(&self.d_theta4(section));
        let dth2 = self.project(&self.d_theta4(&dth));
        let dph2 = self.project(&self.d_phi4(&self.project(&self.d_phi4(section))));
        let inv_rho2 = 1.0 / (self.rho * self.rho);
        Ok((0..section.len())
            .map(|i| {
                let r = self.row_of(i);
                let s2 = self.sin_t[r] * self.sin_t[r];
                let mut out = [0.0; 4];
                for d in 0..4 {
                    out[d] = -(dth2[i][d] + dph2[i][d] / s2 + self.cot_t[r] * dth[i][d])
                        * inv_rho2;
                }
                out
            })
            .collect())
    }

    /// Scalar Laplace-Beltrami operator, positive spectrum.
    pub fn scalar_laplacian(&self, f: &[f64]) -> Vec<f64> {
        let dth = self.d_theta(f);
        let dth2 = self.d_theta(&dth);
        let dph2 = self.d_phi(&self.d_phi(f));
        let inv_rho2 = 1.0 / (self.rho * self.rho);
        (0..f.len())
            .map(|i| {
                let r = self.row_of(i);
                let s2 = self.sin_t[r] * self.sin_t[r];
                -(dth2[i] + dph2[i] / s2 + self.cot_t[r] * dth[i]) * inv_rho2
            })
            .collect()
    }

    /// Integral over the sphere: exact |sin| Fourier weights in latitude,
    /// trapezoid in longitude, halving the double cover.
    pub fn integrate(&self, field: &[f64]) -> f64 {
        let rows = self.rows();
        let np = self.np;
        let mut phi_avg = vec![0.0; rows];
        for (j, avg) in phi_avg.iter_mut().enumerate() {
            *avg = field[j * np..(j + 1) * np].iter().sum::<f64>() / np as f64;
        }
        let offset = 0.5 * PI / self.nt as f64;
        let coeffs = fourier_coefficients(&phi_avg, offset);
        let mut total = 0.0;
        for (k, c) in coeffs {
            if k.rem_euclid(2) == 0 {
                total += c.re * 4.0 / (1.0 - (k * k) as f64);
            }
        }
        self.rho * self.rho * PI * total
    }

    /// Raw samples of a test mode (not yet normalized).
    fn mode_samples(&self, mode: SphereMode) -> Vec<f64> {
        let rows = self.rows();
        let np = self.np;
        let mut out = Vec::with_capacity(rows * np);
        for j in 0..rows {
            for l in 0..np {
                let t = self.theta[j];
                let p = 2.0 * PI * l as f64 / np as f64;
                out.push(match mode {
                    SphereMode::Constant => 1.0,
                    SphereMode::Polar => t.cos(),
                    SphereMode::Azimuthal => t.sin() * p.cos(),
                });
            }
        }
        out
    }

    /// Mode normalized to unit L^2 norm, with its eigenvalue.
    pub fn normalized_mode(&self, mode: SphereMode) -> (Vec<f64>, f64) {
        let raw = self.mode_samples(mode);
        let sq: Vec<f64> = raw.iter().map(|v| v * v).collect();
        let norm = self.integrate(&sq).sqrt();
        let lambda = match mode {
            SphereMode::Constant => 0.0,
            _ => 2.0 / (self.rho * self.rho),
        };
        (raw.into_iter().map(|v| v / norm).collect(), lambda)
    }

    /// Tension field of the immersion, computed as minus the bundle
    /// Laplacian of the position section.
    pub fn tension(&self) -> Vec<Vec4> {
        let dth = self.project(&self.d_theta4(&self.points));
        let dth2 = self.project(&self.d_theta4(&dth));
        let dph2 = self.project(&self.d_phi4(&self.project(&self.d_phi4(&self.points))));
        let inv_rho2 = 1.0 / (self.rho * self.rho);
        (0..self.points.len())
            .map(|i| {
                let r = self.row_of(i);
                let s2 = self.sin_t[r] * self.sin_t[r];
                let mut out = [0.0; 4];
                for d in 0..4 {
                    out[d] =
                        (dth2[i][d] + dph2[i][d] / s2 + self.cot_t[r] * dth[i][d]) * inv_rho2;
                }
                out
            })
            .collect()
    }

    /// Orthonormal frame vectors dphi(e_1), dphi(e_2) as ambient vectors.
    fn frame(&self) -> (Vec<Vec4>, Vec<Vec4>) {
        let e1: Vec<Vec4> = self
            .d_theta4(&self.points)
            .into_iter()
            .map(|v| {
                let inv = 1.0 / self.rho;
                [v[0] * inv, v[1] * inv, v[2] * inv, v[3] * inv]
            })
            .collect();
        let e2: Vec<Vec4> = self
            .d_phi4(&self.points)
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let r = self.row_of(i);
                let inv = 1.0 / (self.rho * self.sin_t[r]);
                [v[0] * inv, v[1] * inv, v[2] * inv, v[3] * inv]
            })
            .collect();
        (e1, e2)
    }

    /// The six integrals of the curvature-term second variation for the
    /// normal section V = f nu, plus their combination.
    pub fn curvature_term_integrals(&self, mode: SphereMode) -> Result<CurvatureTermIntegrals> {
        let (f, lambda) = self.normalized_mode(mode);
        let section: Vec<Vec4> = self
            .normals
            .iter()
            .zip(f.iter())
            .map(|(nu, &fi)| [fi * nu[0], fi * nu[1], fi * nu[2], fi * nu[3]])
            .collect();
        let tau = self.tension();
        let lap_v = self.bundle_laplacian(&section)?;
        let (e1, e2) = self.frame();

        // covariant derivatives of V along the frame
        let n1: Vec<Vec4> = self
            .project(&self.d_theta4(&section))
            .into_iter()
            .map(|v| {
                let inv = 1.0 / self.rho;
                [v[0] * inv, v[1] * inv, v[2] * inv, v[3] * inv]
            })
            .collect();
        let n2: Vec<Vec4> = self
            .project(&self.d_phi4(&section))
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let r = self.row_of(i);
                let inv = 1.0 / (self.rho * self.sin_t[r]);
                [v[0] * inv, v[1] * inv, v[2] * inv, v[3] * inv]
            })
            .collect();

        let n = section.len();
        let m = 2.0;
        let mut g_sq = vec![0.0; n]; // sum_i <nabla_i V, tau>^2
        let mut gd = vec![0.0; n]; //   sum_i <nabla_i V, tau><dphi(e_i), Lap V>
        let mut d_sq = vec![0.0; n]; // sum_i <dphi(e_i), Lap V>^2
        for i in 0..n {
            let g1 = dot4(&n1[i], &tau[i]);
            let g2 = dot4(&n2[i], &tau[i]);
            let d1 = dot4(&e1[i], &lap_v[i]);
            let d2 = dot4(&e2[i], &lap_v[i]);
            g_sq[i] = g1 * g1 + g2 * g2;
            gd[i] = g1 * d1 + g2 * d2;
            d_sq[i] = d1 * d1 + d2 * d2;
        }

        let t2 = self.integrate(&g_sq);
        let t3 = self.integrate(&gd);
        let t6 = self.integrate(&d_sq);
        let t1 = m * t2;
        let t4 = m * t3;
        let t5 = m * t6;
        let total = t1 - t2 + 2.0 * t3 - 2.0 * t4 + t5 - t6;
        Ok(CurvatureTermIntegrals {
            mode,
            lambda,
            grad_tau_sq_scaled: t1,
            grad_tau_sq: t2,
            cross: t3,
            cross_scaled: t4,
            frame_lap_sq_scaled: t5,
            frame_lap_sq: t6,
            total,
        })
    }

    /// Numeric int |Hess f|^2 for the discrete Bochner identity
    /// int |Hess f|^2 = lambda^2 - ricci lambda.
    pub fn hessian_norm_sq(&self, mode: SphereMode) -> (f64, f64) {
        let (f, lambda) = self.normalized_mode(mode);
        // Hessian in coordinates: H_ab = d_a d_b f - Gamma^c_ab d_c f, with
        // Gamma^th_phph = -sin cos, Gamma^ph_thph = cot.
        let ft = self.d_theta(&f);
        let fp = self.d_phi(&f);
        let ftt = self.d_theta(&ft);
        let ftp = self.d_phi(&ft);
        let fpp = self.d_phi(&fp);
        let rho2 = self.rho * self.rho;
        let n = f.len();
        let mut integrand = vec![0.0; n];
        for i in 0..n {
            let r = self.row_of(i);
            let s = self.sin_t[r];
            let c = self.cos_t[r];
            let cot = self.cot_t[r];
            let h_tt = ftt[i];
            let h_tp = ftp[i] - cot * fp[i];
            let h_pp = fpp[i] + s * c * ft[i];
            // |Hess|^2 = g^{aa} g^{bb} H_ab^2 with g^{thth} = 1/rho^2,
            // g^{phph} = 1/(rho^2 sin^2)
            let gtt = 1.0 / rho2;
            let gpp = 1.0 / (rho2 * s * s);
            integrand[i] =
                gtt * gtt * h_tt * h_tt + 2.0 * gtt * gpp * h_tp * h_tp + gpp * gpp * h_pp * h_pp;
        }
        let ricci = 1.0 / rho2; // (m-1)/rho^2 with m = 2
        let expected = lambda * lambda - ricci * lambda;
        (self.integrate(&integrand), expected)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CurvatureTermIntegrals {
    pub mode: SphereMode,
    pub lambda: f64,
    /// |dphi|^2 |<nabla V, tau>|^2: closed form m^3 H^2 lambda.
    pub grad_tau_sq_scaled: f64,
    /// |<nabla V, tau>|^2 contracted with the metric: m^2 H^2 lambda.
    pub grad_tau_sq: f64,
    /// <nabla_i V, tau><dphi(e_i), Lap V>: 2 m H c lambda.
    pub cross: f64,
    /// |dphi|^2 times the cross term: 2 m^2 H c lambda.
    pub cross_scaled: f64,
    /// |dphi|^2 |<dphi, Lap V>|^2: 4 m t lambda.
    pub frame_lap_sq_scaled: f64,
    /// |<dphi, Lap V>|^2 contracted with the metric: 4 t lambda.
    pub frame_lap_sq: f64,
    /// t1 - t2 + 2 t3 - 2 t4 + t5 - t6; vanishes at m = 2.
    pub total: f64,
}

impl CurvatureTermIntegrals {
    /// Closed-form references for the six integrals at m=2, t=3.
    pub fn closed_forms(&self) -> [f64; 6] {
        let m = 2.0;
        let h2 = 3.0;
        let hc = 3.0; // H c = c^2 = t
        let t = 3.0;
        let lam = self.lambda;
        [
            m * m * m * h2 * lam,
            m * m * h2 * lam,
            2.0 * m * hc * lam,
            2.0 * m * m * hc * lam,
            4.0 * m * t * lam,
            4.0 * t * lam,
        ]
    }

    pub fn values(&self) -> [f64; 6] {
        [
            self.grad_tau_sq_scaled,
            self.grad_tau_sq,
            self.cross,
            self.cross_scaled,
            self.frame_lap_sq_scaled,
            self.frame_lap_sq,
        ]
    }
}
