//! Assembly of the stability quadratic forms as lambda-polynomials, from
//! three independent routes that are never silently merged:
//!
//!  * `fixture`      - the tabulated coefficient families, transcribed;
//!  * `variational`  - term-by-term evaluation of the general second
//!                     variation on an eigenfunction (any radius, any K);
//!  * `norms:*`      - recombination of the three bundle-norm integrals,
//!                     stated only on the t=3 sphere with unit curvature,
//!                     with the norms taken from a selectable source.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{LambdaPoly, QuadExt, Rat};
use crate::forms::fixtures;
use crate::forms::norms::{composition_bundle_norms, fixture_bundle_norms, BundleNorms, NormSource};
use crate::forms::section::NormalSection;
use crate::geometry::Hypersphere;

/// Which energy a quadratic form belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Energy {
    /// E4: the iterated-Laplacian energy.
    #[serde(rename = "e4")]
    E4,
    /// ES4 = E4 + curvature term.
    #[serde(rename = "es4")]
    Es4,
    /// The curvature term alone.
    #[serde(rename = "hat")]
    Hat,
}

impl Energy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Energy::E4 => "e4",
            Energy::Es4 => "es4",
            Energy::Hat => "hat",
        }
    }
}

/// Provenance of a quadratic-form polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Fixture,
    Variational,
    NormCombination(NormSource),
    Composition,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::Fixture => "fixture",
            Source::Variational => "variational",
            Source::NormCombination(NormSource::Fixture) => "norms:fixture",
            Source::NormCombination(NormSource::Composition) => "norms:composition",
            Source::Composition => "composition",
        }
    }
}

impl Serialize for Source {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// A route selector for building Q4 (and from it Q4-ES).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Q4Route {
    Fixture,
    Variational,
    NormCombination(NormSource),
}

impl Q4Route {
    pub const ALL: [Q4Route; 4] = [
        Q4Route::Fixture,
        Q4Route::Variational,
        Q4Route::NormCombination(NormSource::Fixture),
        Q4Route::NormCombination(NormSource::Composition),
    ];

    pub fn source(&self) -> Source {
        match self {
            Q4Route::Fixture => Source::Fixture,
            Q4Route::Variational => Source::Variational,
            Q4Route::NormCombination(n) => Source::NormCombination(*n),
        }
    }
}

/// A stability quadratic form reduced to a polynomial in the eigenvalue.
/// Every route must produce a rational-only polynomial: the root terms
/// carried by the principal curvature cancel in pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormPoly {
    pub energy: Energy,
    pub source: Source,
    pub m: u32,
    pub t: Rat,
    pub curvature: Rat,
    pub poly: LambdaPoly,
}

impl Serialize for QuadraticFormPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QuadraticFormPoly", 6)?;
        s.serialize_field("energy", self.energy.as_str())?;
        s.serialize_field("source", self.source.as_str())?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("t", &self.t.to_string())?;
        s.serialize_field("K", &self.curvature.to_string())?;
        let coeffs: Vec<String> = self
            .poly
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

fn finish(
    energy: Energy,
    source: Source,
    h: &Hypersphere,
    curvature: &Rat,
    poly: LambdaPoly,
) -> Result<QuadraticFormPoly> {
    if !poly.is_rational_only() {
        return Err(Error::IrrationalCoefficients);
    }
    Ok(QuadraticFormPoly {
        energy,
        source,
        m: h.m,
        t: h.t.clone(),
        curvature: curvature.clone(),
        poly,
    })
}

/// Term-by-term evaluation of the second-variation quadratic form for the
/// iterated-Laplacian energy on an eigenfunction section. Works at any
/// radius and any constant target curvature.
///
/// Contractions against the umbilic shape operator A = c Id reduce to
///   <A grad(Delta f), grad f>        -> c lambda^2
///   <A e_i, A grad f><A e_i, grad f> -> c^3 lambda
///   <A grad f, grad f>               -> c lambda
///   <A (Delta grad f), grad f>       -> c (lambda - ricci) lambda
/// under the normalization int f^2 = 1.
pub fn q4_variational(h: &Hypersphere, curvature: &Rat) -> Result<QuadraticFormPoly> {
    let m = h.m_rat();
    let c = &h.c;
    let h2 = c.square(); // H^2 = t as an element of the field
    let a2 = QuadExt::rational(h.norm_a_sq.clone());
    let a4 = a2.square();

    let s = NormalSection::unit();
    let l1 = s.bar_laplacian(h);
    let l2 = l1.bar_laplacian(h);

    // | Lap^2 (f nu) - m K Lap (f nu) |^2
    let mk = QuadExt::rational(&m * curvature);
    let u = l2.sub(&l1.scale(&mk));
    let main = u.pairing(&u);

    let lam = LambdaPoly::monomial(1, QuadExt::one());
    let lam2 = lam.shift_up(1);
    let int_grad_lap = lam2.clone(); // <grad Delta f, grad f>
    let int_veclap_grad = &lam2 - &lam.scale_rat(&h.ricci); // <Delta grad f, grad f>

    let q = |x: QuadExt| LambdaPoly::constant(x);
    let scl = |k: i64| Rat::int(k);

    // K block
    let m2h2 = &(&m * &m) * &h2.rat; // m^2 H^2 is rational (h2 has no root part)
    let mut k_block = l1.pairing(&l1).scale_rat(&(&m2h2 * &scl(-4)));
    k_block = &k_block + &lam.scale_rat(&(&(&m2h2 * &h.norm_a_sq) * &scl(-4)));
    k_block = &k_block + &q(a4.scale(&(&m2h2 * &scl(-10))));
    let m_h = c.scale(&m); // m H
    let pref = m_h.scale(&scl(-4)); // -4 m H
    k_block = &k_block + &int_grad_lap.scale(&(&pref * c));
    k_block = &k_block + &lam.scale(&(&pref * &(&(c * c) * c)));
    k_block = &k_block + &lam.scale(&(&pref.scale(&(&h.norm_a_sq * &scl(2))) * c));
    k_block = &k_block + &int_veclap_grad.scale(&(&pref * c));

    // K^2 block
    let m3h2 = &(&(&m * &m) * &m) * &h2.rat;
    let mut k2_block = lam.scale_rat(&(&(&m3h2 * &scl(4)) + &m2h2));
    let const_term = &a2.scale(&(&m3h2 * &scl(10))) + &h2.square().scale(&(&(&m * &m) * &(&m * &m) * &scl(4)));
    k2_block = &k2_block + &q(const_term);
    k2_block = &k2_block + &lam.scale(&(&m_h.scale(&(&m * &scl(4))) * c));

    let total = &(&main + &k_block.scale_rat(curvature)) + &k2_block.scale_rat(&(curvature * curvature));
    finish(Energy::E4, Source::Variational, h, curvature, total)
}

/// Recombination of the bundle norms, stated only at t=3 with unit target
/// curvature:
/// third - 2m second - 11 m^2 first - 24 m lambda^2
/// + (-24 m^3 - 9 m^2 - 84 m) lambda - 144 m^4.
pub fn q4_norm_combination(h: &Hypersphere, source: NormSource) -> Result<QuadraticFormPoly> {
    if !h.is_critical_radius() {
        return Err(Error::OffCriticalRadius);
    }
    let norms = match source {
        NormSource::Fixture => fixture_bundle_norms(h.m),
        NormSource::Composition => composition_bundle_norms(h)?,
    };
    let poly = recombine_norms(h.m, &norms);
    finish(
        Energy::E4,
        Source::NormCombination(source),
        h,
        &Rat::one(),
        poly,
    )
}

fn recombine_norms(m: u32, norms: &BundleNorms) -> LambdaPoly {
    let m = m as i64;
    let lam = LambdaPoly::monomial(1, QuadExt::one());
    let mut total = norms.third.clone();
    total = &total - &norms.second.scale_rat(&Rat::int(2 * m));
    total = &total - &norms.first.scale_rat(&Rat::int(11 * m * m));
    total = &total - &lam.shift_up(1).scale_rat(&Rat::int(24 * m));
    total = &total + &lam.scale_rat(&Rat::int(-24 * m * m * m - 9 * m * m - 84 * m));
    &total - &LambdaPoly::constant(QuadExt::rational(Rat::int(144 * m * m * m * m)))
}

/// Curvature-term quadratic form, evaluated exactly:
/// (m-1) [ m^2 H^2 lambda - 4 m H c lambda + 4 c^2 lambda ],
/// which closes to t (m-1)(m-2)^2 lambda.
pub fn qhat_form(h: &Hypersphere) -> Result<QuadraticFormPoly> {
    let m = h.m_rat();
    let c = &h.c;
    let h2 = c.square();
    let term = &(&h2.scale(&(&m * &m)) - &(c * &h.c).scale(&(&m * &Rat::int(4)))) + &c.square().scale(&Rat::int(4));
    let poly = LambdaPoly::monomial(1, term.scale(&(&m - &Rat::one())));
    finish(Energy::Hat, Source::Variational, h, &Rat::one(), poly)
}

/// Q4 through the selected route.
pub fn q4_form(h: &Hypersphere, curvature: &Rat, route: Q4Route) -> Result<QuadraticFormPoly> {
    match route {
        Q4Route::Fixture => {
            if !h.is_critical_radius() || curvature != &Rat::one() {
                return Err(Error::OffCriticalRadius);
            }
            finish(
                Energy::E4,
                Source::Fixture,
                h,
                curvature,
                fixtures::q4_fixture().eval_at_m(h.m),
            )
        }
        Q4Route::Variational => q4_variational(h, curvature),
        Q4Route::NormCombination(src) => {
            if curvature != &Rat::one() {
                return Err(Error::OffCriticalRadius);
            }
            q4_norm_combination(h, src)
        }
    }
}

/// Q4-ES = Q4 + Qhat; the sum is structural, so additivity holds by
/// construction for every route.
pub fn q4es_form(h: &Hypersphere, curvature: &Rat, route: Q4Route) -> Result<QuadraticFormPoly> {
    let base = match route {
        Q4Route::Fixture => {
            if !h.is_critical_radius() || curvature != &Rat::one() {
                return Err(Error::OffCriticalRadius);
            }
            return finish(
                Energy::Es4,
                Source::Fixture,
                h,
                curvature,
                fixtures::q4es_fixture().eval_at_m(h.m),
            );
        }
        other => q4_form(h, curvature, other)?,
    };
    let hat = qhat_form(h)?;
    let mut combined = base;
    combined.energy = Energy::Es4;
    combined.poly = &combined.poly + &hat.poly;
    Ok(combined)
}

/// Builds the requested energy's quadratic form through the given route.
pub fn energy_form(
    energy: Energy,
    h: &Hypersphere,
    curvature: &Rat,
    route: Q4Route,
) -> Result<QuadraticFormPoly> {
    match energy {
        Energy::E4 => q4_form(h, curvature, route),
        Energy::Es4 => q4es_form(h, curvature, route),
        Energy::Hat => match route {
            Q4Route::Fixture => {
                if !h.is_critical_radius() {
                    return Err(Error::OffCriticalRadius);
                }
                finish(
                    Energy::Hat,
                    Source::Fixture,
                    h,
                    &Rat::one(),
                    fixtures::qhat_fixture().eval_at_m(h.m),
                )
            }
            _ => qhat_form(h),
        },
    }
}
