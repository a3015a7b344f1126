//! Geometry of the totally umbilic hypersphere S^m(a) inside a round
//! sphere, and exact evaluation of the fourth-order tension fields on it.
//!
//! Everything is driven by the square of the principal curvature,
//! t = (1 - a^2)/a^2, which stays rational even when the radius a is not.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{QuadExt, Rat};

/// Target space of constant sectional curvature K, with curvature operator
/// R(X,Y)Z = K(<Y,Z> X - <X,Z> Y).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceForm {
    pub curvature: Rat,
}

impl SpaceForm {
    pub fn new(curvature: Rat) -> Self {
        SpaceForm { curvature }
    }

    /// The unit round sphere.
    pub fn unit_sphere() -> Self {
        SpaceForm {
            curvature: Rat::one(),
        }
    }
}

/// Orientation sign of the unit normal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Default for Sign {
    /// Minus matches the convention A = -sqrt(1-a^2)/a * Id.
    fn default() -> Self {
        Sign::Minus
    }
}

/// Radius input: either the radius a itself (must be rational) or the
/// rational invariant t = (1 - a^2)/a^2 directly, which covers radii such
/// as a = 1/sqrt(2) whose t = 1 is rational while a is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadiusSpec {
    A(Rat),
    T(Rat),
}

/// Geometric record of the hypersphere S^m(a) in S^{m+1}(1):
/// shape operator A = c Id with c = sigma sqrt(t), mean curvature H = c,
/// |A|^2 = m t, and Ricci constant (m-1)/a^2 = (m-1)(1+t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersphere {
    pub m: u32,
    pub t: Rat,
    pub sigma: Sign,
    /// Principal curvature c = sigma sqrt(t).
    pub c: QuadExt,
    /// Mean curvature H = c.
    pub mean_curvature: QuadExt,
    /// |A|^2 = m t.
    pub norm_a_sq: Rat,
    /// Ricci constant (m-1)(1+t).
    pub ricci: Rat,
    /// The radius a, when it was given rationally.
    pub radius_a: Option<Rat>,
}

impl Hypersphere {
    pub fn new(m: u32, radius: RadiusSpec, sigma: Sign) -> Result<Self> {
        assert!(m >= 1, "domain dimension must be positive");
        let (t, radius_a) = match radius {
            RadiusSpec::A(a) => {
                if !a.is_positive() || a > Rat::one() {
                    return Err(Error::InvalidRadius(a.to_string()));
                }
                let a2 = &a * &a;
                let t = &(&Rat::one() - &a2) / &a2;
                (t, Some(a))
            }
            RadiusSpec::T(t) => {
                if t.is_negative() {
                    return Err(Error::InvalidCurvatureRatio(t.to_string()));
                }
                (t, None)
            }
        };
        let c = QuadExt::root_term(Rat::int(sigma.to_i8() as i64), t.clone())?;
        let m_rat = Rat::int(m as i64);
        let norm_a_sq = &m_rat * &t;
        let ricci = &(&m_rat - &Rat::one()) * &(&Rat::one() + &t);
        Ok(Hypersphere {
            m,
            t,
            sigma,
            mean_curvature: c.clone(),
            c,
            norm_a_sq,
            ricci,
            radius_a,
        })
    }

    /// The hypersphere of radius 1/2, written t = 3.
    pub fn critical(m: u32) -> Self {
        Self::new(m, RadiusSpec::A(Rat::new(1, 2)), Sign::Minus).expect("valid radius")
    }

    pub fn with_flipped_sign(&self) -> Self {
        Self::new(self.m, RadiusSpec::T(self.t.clone()), self.sigma.flip()).expect("valid t")
    }

    pub fn m_rat(&self) -> Rat {
        Rat::int(self.m as i64)
    }

    /// True when t = 3, the radius at which the fourth-order tension
    /// vanishes for the unit-sphere target.
    pub fn is_critical_radius(&self) -> bool {
        self.t == Rat::int(3)
    }

    /// Inverse squared radius 1/a^2 = 1 + t.
    pub fn inv_radius_sq(&self) -> Rat {
        Rat::one() + self.t.clone()
    }
}

impl Serialize for Hypersphere {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Hypersphere", 6)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("t", &self.t.to_string())?;
        s.serialize_field("sigma", &(self.sigma.to_i8() as i32))?;
        s.serialize_field("H", &self.mean_curvature)?;
        s.serialize_field("normA2", &self.norm_a_sq.to_string())?;
        s.serialize_field("ricci", &self.ricci.to_string())?;
        s.end()
    }
}

/// Normal coefficients of the iterated connection Laplacians of the tension
/// field: level j holds k_j with Lap^j tau = k_j nu.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensionLadder {
    pub levels: Vec<QuadExt>,
}

impl TensionLadder {
    pub fn level(&self, j: usize) -> &QuadExt {
        &self.levels[j]
    }
}

/// For constant normal coefficient k the Laplacian acts as multiplication
/// by |A|^2, so level j is m H (m t)^j.
pub fn tension_ladder(h: &Hypersphere, max_level: usize) -> TensionLadder {
    let tau = h.mean_curvature.scale(&h.m_rat());
    let step = &h.norm_a_sq;
    let mut levels = Vec::with_capacity(max_level + 1);
    let mut cur = tau;
    for _ in 0..=max_level {
        levels.push(cur.clone());
        cur = cur.scale(step);
    }
    TensionLadder { levels }
}

/// Trace sum_j <nabla_{e_j} Lap^level tau, dphi(e_j)> = -c m k_level,
/// from nabla(k nu) = -k A for constant k.
fn trace_grad_against_frame(h: &Hypersphere, ladder: &TensionLadder, level: usize) -> QuadExt {
    -&(&h.c * &ladder.level(level).scale(&h.m_rat()))
}

/// Normal coefficient of the fourth-order tension field, evaluated term by
/// term from its defining expression with the space-form curvature
/// operator. For K = 1 this closes to m^4 c t^2 (t - 3).
pub fn tau4_coefficient(h: &Hypersphere, sf: &SpaceForm) -> QuadExt {
    let ladder = tension_ladder(h, 3);
    let k = &sf.curvature;
    let tau = ladder.level(0);

    // Lap^3 tau
    let lead = ladder.level(3).clone();
    // R(Lap^2 tau, dphi(e_j)) dphi(e_j) = K m Lap^2 tau  (normal argument)
    let curv_lap2 = ladder.level(2).scale(&(k * &h.m_rat()));
    // R(tau, nabla_{e_j} Lap tau) dphi(e_j): only the trace term survives
    let curv_mixed = (&trace_grad_against_frame(h, &ladder, 1) * tau).scale(k);
    // R(nabla_{e_j} tau, Lap tau) dphi(e_j): again only the trace term
    let curv_low = (&trace_grad_against_frame(h, &ladder, 0) * ladder.level(1)).scale(k);

    &(&(&lead - &curv_lap2) + &curv_mixed) + &curv_low
}

/// The three building blocks of the curvature correction to the
/// fourth-order tension. Each contraction picks up a factor
/// <dphi(X), tau> = 0 or the covariant derivative of the curvature tensor,
/// so all three vanish identically for isometric hypersurfaces in space
/// forms; they are computed, not asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauHatTerms {
    pub omega0: QuadExt,
    pub omega1_trace: QuadExt,
    pub xi1: QuadExt,
}

impl TauHatTerms {
    pub fn is_zero(&self) -> bool {
        self.omega0.is_zero() && self.omega1_trace.is_zero() && self.xi1.is_zero()
    }
}

pub fn tau_hat4_terms(h: &Hypersphere, sf: &SpaceForm) -> TauHatTerms {
    let ladder = tension_ladder(h, 0);
    let tau = ladder.level(0);
    // <dphi(X), tau> = 0 because tau is normal; the inner curvature factor
    // R(dphi(e_i), dphi(e_j)) tau = K(<e_j, tau> e_i - <e_i, tau> e_j)
    // therefore evaluates to zero before any outer operator applies.
    let pairing_frame_tau = QuadExt::zero();
    let inner = pairing_frame_tau.scale(&sf.curvature);
    let omega0 = (&inner * tau).scale(&sf.curvature);
    let omega1_trace = (&inner * tau).scale(&sf.curvature);
    // Space forms have parallel curvature tensor, and the remaining factor
    // is the same vanishing contraction.
    let xi1 = inner;
    TauHatTerms {
        omega0,
        omega1_trace,
        xi1,
    }
}

/// Solves tau4 = 0 for t > 0 at unit target curvature. After dividing out
/// the factor c t^2, the remaining rational factor is linear with the
/// single positive root t = 3K.
pub fn solve_proper_radius(m: u32, sf: &SpaceForm) -> Result<Rat> {
    // Sample the rational cofactor g(t) = tau4 / (c t^2) at two points and
    // solve the resulting linear equation exactly; a holdout sample then
    // confirms the root annihilates the full coefficient.
    let cofactor = |t: i64| -> Rat {
        let h = Hypersphere::new(m, RadiusSpec::T(Rat::int(t)), Sign::Minus).expect("valid t");
        let tau4 = tau4_coefficient(&h, sf);
        let divisor = h.c.scale(&Rat::int(t * t));
        tau4.try_div(&divisor)
            .expect("c t^2 is nonzero for t > 0")
            .as_rational()
            .expect("cofactor of the tension coefficient is rational")
    };
    let g1 = cofactor(1);
    let g2 = cofactor(2);
    let slope = &g2 - &g1;
    if slope.is_zero() {
        return Err(Error::NoProperRadius);
    }
    // g(t) = g1 + (t - 1) * slope = 0  =>  t* = 1 - g1/slope
    let t_star = Rat::one() - &g1 / &slope;
    if !t_star.is_positive() {
        return Err(Error::NoProperRadius);
    }
    let h = Hypersphere::new(m, RadiusSpec::T(t_star.clone()), Sign::Minus)?;
    if !tau4_coefficient(&h, sf).is_zero() {
        return Err(Error::NoProperRadius);
    }
    Ok(t_star)
}
