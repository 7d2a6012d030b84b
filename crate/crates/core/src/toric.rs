//! The Hirzebruch surface `F_r` in Cox coordinates.
//!
//! The Cox ring has four variables with classes
//!
//! | variable | class      | vanishing locus            |
//! |----------|------------|----------------------------|
//! | `x1`     | `F`        | a fiber                    |
//! | `x2`     | `E`        | the negative curve `E_r`   |
//! | `x3`     | `F`        | a fiber                    |
//! | `x4`     | `E + rF`   | a section disjoint from `E_r` |
//!
//! and points are orbits of the torus action
//! `(x1, x2, x3, x4) ~ (λ x1, μ x2, λ x3, λ^r μ x4)`. The sections of a class
//! `aF + bE` are spanned by the monomials of that class, and the fibration
//! `F_r -> P^1` is `(x1 : x3)`.
//!
//! The four affine charts are indexed by one nonvanishing fiber variable and
//! one nonvanishing section variable. Scaling both to one leaves the other
//! two coordinates as affine coordinates `(u, v)` on a copy of `A^2`, and a
//! Cox monomial restricts to the ordinary monomial in `u, v` given by its
//! two non-pivot exponents.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{format_rational, BigRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HirzebruchSurface {
    r: u32,
}

impl HirzebruchSurface {
    pub fn new(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("the surface index r must be at least 1".into()));
        }
        Ok(HirzebruchSurface { r })
    }

    pub fn r(self) -> u32 {
        self.r
    }

    /// `L_r = (r + 1)F + E`, the ample class of least self-intersection.
    pub fn minimal_polarization(self) -> DivisorClass {
        DivisorClass::new(i64::from(self.r) + 1, 1)
    }

    /// Intersection form on `Pic(F_r)`: `F^2 = 0`, `F.E = 1`, `E^2 = -r`.
    pub fn intersect(self, x: DivisorClass, y: DivisorClass) -> i64 {
        x.a * y.b + y.a * x.b - i64::from(self.r) * x.b * y.b
    }

    /// Ample and base-point free classes are the nef ones: `a >= r b >= 0`.
    pub fn is_nef(self, d: DivisorClass) -> bool {
        d.b >= 0 && d.a >= i64::from(self.r) * d.b
    }

    /// Multiplicity of `E_r` as a fixed component of `|D|`. Nonzero exactly
    /// when `D` is effective but not nef.
    pub fn fixed_negative_part(self, d: DivisorClass) -> Result<i64> {
        if d.a < 0 || d.b < 0 {
            return Err(Error::NotEffective { a: d.a, b: d.b });
        }
        Ok((d.b - d.a / i64::from(self.r)).max(0))
    }

    /// Monomial basis of `H^0(F_r, D)`, ordered lexicographically by `(e4, e3)`.
    ///
    /// For an effective class that is not nef, `x4` can appear at most
    /// `floor(a / r)` times, so every monomial carries the fixed factor
    /// `x2^(b - floor(a/r))`.
    pub fn section_basis(self, d: DivisorClass) -> Result<Vec<CoxMonomial>> {
        self.fixed_negative_part(d)?;
        let r = i64::from(self.r);
        let top = d.b.min(d.a / r);
        let mut out = Vec::new();
        for e4 in 0..=top {
            let rest = d.a - r * e4;
            for e3 in 0..=rest {
                out.push(CoxMonomial::new([
                    (rest - e3) as u32,
                    (d.b - e4) as u32,
                    e3 as u32,
                    e4 as u32,
                ]));
            }
        }
        Ok(out)
    }

    /// `h^0(F_r, d L_r) = r d (d + 1) / 2 + (d + 1)^2`.
    pub fn h0(self, d: u32) -> u64 {
        let (r, d) = (u64::from(self.r), u64::from(d));
        r * d * (d + 1) / 2 + (d + 1) * (d + 1)
    }

    /// Basis of `H^0(d L_r)`.
    pub fn polarization_basis(self, d: u32) -> Vec<CoxMonomial> {
        self.section_basis(self.minimal_polarization().scale(i64::from(d)))
            .expect("multiples of L_r are effective")
    }

    /// Torus equivalence of two points.
    pub fn same_point(self, p: &SurfacePoint, q: &SurfacePoint) -> bool {
        if !same_fiber(p, q) {
            return false;
        }
        // λ with (x1, x3)(q) = λ (x1, x3)(p)
        let lambda = if !p.x[0].is_zero() {
            &q.x[0] / &p.x[0]
        } else {
            &q.x[2] / &p.x[2]
        };
        let scaled = &p.x[3] * pow(&lambda, self.r);
        // (x2 : λ^r x4)(p) == (x2 : x4)(q)
        &p.x[1] * &q.x[3] == &scaled * &q.x[1]
    }

    /// Both non-pivot coordinates after scaling the chart pivots to one.
    pub fn normalize_to_chart(self, p: &SurfacePoint, chart: Chart) -> Result<(BigRational, BigRational)> {
        if !chart.is_valid_for(p) {
            return Err(Error::ChartInvalid);
        }
        let (fp, fo) = chart.fiber.indices();
        let (sp, so) = chart.section.indices();
        let lambda = p.x[fp].recip();
        let u = &p.x[fo] * &lambda;
        let lambda_r = pow(&lambda, self.r);
        let v = match chart.section {
            SectionPivot::X2 => &p.x[so] * &lambda_r / &p.x[sp],
            SectionPivot::X4 => &p.x[so] / (&lambda_r * &p.x[sp]),
        };
        Ok((u, v))
    }
}

impl fmt::Display for HirzebruchSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.r)
    }
}

/// `aF + bE` in the fiber / negative-section basis of `Pic(F_r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const FIBER: DivisorClass = DivisorClass { a: 1, b: 0 };
    pub const NEGATIVE_SECTION: DivisorClass = DivisorClass { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }

    pub fn scale(self, k: i64) -> Self {
        DivisorClass::new(self.a * k, self.b * k)
    }
}

impl std::ops::Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        DivisorClass::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}F + {}E", self.a, self.b)
    }
}

/// `x1^e1 x2^e2 x3^e3 x4^e4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxMonomial {
    pub exponents: [u32; 4],
}

impl CoxMonomial {
    pub fn new(exponents: [u32; 4]) -> Self {
        CoxMonomial { exponents }
    }

    pub fn class(self, r: u32) -> DivisorClass {
        let [e1, e2, e3, e4] = self.exponents.map(i64::from);
        DivisorClass::new(e1 + e3 + i64::from(r) * e4, e2 + e4)
    }

    pub fn evaluate(self, p: &SurfacePoint) -> BigRational {
        self.exponents
            .iter()
            .zip(&p.x)
            .fold(BigRational::one(), |acc, (&e, x)| acc * pow(x, e))
    }

    /// Exponents of the chart coordinates `(u, v)`.
    pub fn localize(self, chart: Chart) -> (u32, u32) {
        let (_, fo) = chart.fiber.indices();
        let (_, so) = chart.section.indices();
        (self.exponents[fo], self.exponents[so])
    }
}

impl fmt::Display for CoxMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A point of `F_r` given by exact Cox coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfacePoint {
    x: [BigRational; 4],
}

impl SurfacePoint {
    pub fn new(x: [BigRational; 4]) -> Result<Self> {
        if x[0].is_zero() && x[2].is_zero() {
            return Err(Error::InvalidInput("x1 and x3 both vanish".into()));
        }
        if x[1].is_zero() && x[3].is_zero() {
            return Err(Error::InvalidInput("x2 and x4 both vanish".into()));
        }
        Ok(SurfacePoint { x })
    }

    pub fn from_integers(x: [i64; 4]) -> Result<Self> {
        Self::new(x.map(|v| BigRational::from_integer(v.into())))
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.x
    }

    /// Charts in preference order `(x1,x2), (x1,x4), (x3,x2), (x3,x4)` that
    /// are valid at this point. Never empty.
    pub fn valid_charts(&self) -> Vec<Chart> {
        Chart::ALL.into_iter().filter(|c| c.is_valid_for(self)).collect()
    }

    pub fn preferred_chart(&self) -> Chart {
        self.valid_charts()[0]
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.x;
        write!(
            f,
            "({}, {}, {}, {})",
            format_rational(a),
            format_rational(b),
            format_rational(c),
            format_rational(d)
        )
    }
}

pub fn is_on_negative_curve(p: &SurfacePoint) -> bool {
    p.x[1].is_zero()
}

/// Whether the two points lie on one fiber, i.e. `(x1 : x3)` agree.
pub fn same_fiber(p: &SurfacePoint, q: &SurfacePoint) -> bool {
    &p.x[0] * &q.x[2] == &p.x[2] * &q.x[0]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiberPivot {
    X1,
    X3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SectionPivot {
    X2,
    X4,
}

impl FiberPivot {
    /// (pivot index, other index) into the coordinate array.
    fn indices(self) -> (usize, usize) {
        match self {
            FiberPivot::X1 => (0, 2),
            FiberPivot::X3 => (2, 0),
        }
    }
}

impl SectionPivot {
    fn indices(self) -> (usize, usize) {
        match self {
            SectionPivot::X2 => (1, 3),
            SectionPivot::X4 => (3, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chart {
    pub fiber: FiberPivot,
    pub section: SectionPivot,
}

impl Chart {
    pub const ALL: [Chart; 4] = [
        Chart { fiber: FiberPivot::X1, section: SectionPivot::X2 },
        Chart { fiber: FiberPivot::X1, section: SectionPivot::X4 },
        Chart { fiber: FiberPivot::X3, section: SectionPivot::X2 },
        Chart { fiber: FiberPivot::X3, section: SectionPivot::X4 },
    ];

    pub fn is_valid_for(self, p: &SurfacePoint) -> bool {
        !p.x[self.fiber.indices().0].is_zero() && !p.x[self.section.indices().0].is_zero()
    }

    /// The Cox point with both pivots equal to one and chart coordinates `(u, v)`.
    pub fn point(self, u: BigRational, v: BigRational) -> SurfacePoint {
        let mut x: [BigRational; 4] = std::array::from_fn(|_| BigRational::one());
        x[self.fiber.indices().1] = u;
        x[self.section.indices().1] = v;
        SurfacePoint { x }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.fiber {
            FiberPivot::X1 => "x1",
            FiberPivot::X3 => "x3",
        };
        let b = match self.section {
            SectionPivot::X2 => "x2",
            SectionPivot::X4 => "x4",
        };
        write!(f, "({a},{b})")
    }
}

pub(crate) fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}
