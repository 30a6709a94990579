//! The diagram algebra: formal sums of diagrams with polynomial
//! coefficients in the loop parameter x.
//!
//! Products are computed exactly: stacking two diagrams multiplies their
//! coefficients and contributes one factor of x per closed middle loop.
//! Stranded middle components carry the second parameter, which this crate
//! fixes to 1, so they never change a coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagrams::Diagram;
use crate::RbError;

/// Integer polynomial in x, stored sparsely as exponent -> coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Polynomial::default();
        if c != 0 {
            p.coeffs.insert(0, BigInt::from(c));
        }
        p
    }

    /// The monomial x^n.
    pub fn x_power(n: u32) -> Self {
        let mut p = Polynomial::default();
        p.coeffs.insert(n, BigInt::one());
        p
    }

    /// The variable x itself.
    pub fn x() -> Self {
        Polynomial::x_power(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coefficient(&self, deg: u32) -> BigInt {
        self.coeffs.get(&deg).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (&d, c) in &other.coeffs {
            let entry = out.coeffs.entry(d).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                out.coeffs.remove(&d);
            }
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (&d1, c1) in &self.coeffs {
            for (&d2, c2) in &other.coeffs {
                let entry = out.coeffs.entry(d1 + d2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    /// Multiplies by x^n.
    pub fn shift(&self, n: u32) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d + n, c.clone())).collect(),
        }
    }

    /// Evaluates at a floating-point argument (for numeric checks).
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&d, c)| {
                // coefficients stay tiny in practice; f64 via string is exact
                // for anything under 2^53
                let cf: f64 = c.to_string().parse().unwrap_or(f64::NAN);
                cf * x.powi(d as i32)
            })
            .sum()
    }

    /// Terms as (degree, coefficient), ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&deg, coeff) in self.coeffs.iter().rev() {
            let mag = coeff.abs();
            let sign = coeff.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_mag = mag.is_one();
            match (deg, unit_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{deg}")?,
                (_, false) => write!(f, "{mag}x^{deg}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(u32, String)> = self
            .coeffs
            .iter()
            .map(|(&d, c)| (d, c.to_string()))
            .collect();
        terms.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw: Vec<(u32, String)> = Vec::deserialize(de)?;
        let mut coeffs = BTreeMap::new();
        for (d, s) in raw {
            let c = BigInt::from_str(&s)
                .map_err(|e| D::Error::custom(format!("bad coefficient {s:?}: {e}")))?;
            if !c.is_zero() && coeffs.insert(d, c).is_some() {
                return Err(D::Error::custom(format!("repeated degree {d}")));
            }
        }
        Ok(Polynomial { coeffs })
    }
}

/// A formal sum of diagrams on k columns with [`Polynomial`] coefficients.
/// Terms are kept in canonical diagram order with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    k: usize,
    terms: BTreeMap<Diagram, Polynomial>,
}

impl AlgebraElement {
    pub fn zero(k: usize) -> Self {
        AlgebraElement {
            k,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative identity: the all-vertical diagram.
    pub fn one(k: usize) -> Self {
        AlgebraElement::from_diagram(Diagram::identity(k))
    }

    pub fn from_diagram(d: Diagram) -> Self {
        AlgebraElement::term(d, Polynomial::one())
    }

    pub fn term(d: Diagram, poly: Polynomial) -> Self {
        let k = d.k();
        let mut terms = BTreeMap::new();
        if !poly.is_zero() {
            terms.insert(d, poly);
        }
        AlgebraElement { k, terms }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Diagram) -> Polynomial {
        self.terms.get(d).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, RbError> {
        self.check_k(other)?;
        let mut out = self.clone();
        for (d, p) in &other.terms {
            let entry = out
                .terms
                .entry(d.clone())
                .or_insert_with(Polynomial::zero);
            *entry = entry.add(p);
            if entry.is_zero() {
                out.terms.remove(d);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, RbError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            k: self.k,
            terms: self.terms.iter().map(|(d, p)| (d.clone(), p.neg())).collect(),
        }
    }

    pub fn scale(&self, poly: &Polynomial) -> AlgebraElement {
        if poly.is_zero() {
            return AlgebraElement::zero(self.k);
        }
        AlgebraElement {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(d, p)| (d.clone(), p.mul(poly)))
                .collect(),
        }
    }

    /// Bilinear product: stacks every diagram of `self` over every diagram
    /// of `other`, each closed loop contributing a factor of x.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement, RbError> {
        self.check_k(other)?;
        let mut out = AlgebraElement::zero(self.k);
        for (d1, p1) in &self.terms {
            for (d2, p2) in &other.terms {
                let prod = d1.concatenate(d2)?;
                let coeff = p1.mul(p2).shift(prod.loops);
                let entry = out
                    .terms
                    .entry(prod.diagram)
                    .or_insert_with(Polynomial::zero);
                *entry = entry.add(&coeff);
            }
        }
        out.terms.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    fn check_k(&self, other: &AlgebraElement) -> Result<(), RbError> {
        if self.k != other.k {
            return Err(RbError::KMismatch {
                left: self.k,
                right: other.k,
            });
        }
        Ok(())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, p)| format!("({p}) [{d}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    diagram: Diagram,
    poly: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    k: usize,
    terms: Vec<TermJson>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ElementJson {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(d, p)| TermJson {
                    diagram: d.clone(),
                    poly: p.clone(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = ElementJson::deserialize(de)?;
        let mut out = AlgebraElement::zero(raw.k);
        for t in raw.terms {
            if t.diagram.k() != raw.k {
                return Err(D::Error::custom("term width differs from element width"));
            }
            let add = AlgebraElement::term(t.diagram, t.poly);
            out = out.add(&add).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}

/// True if every term's diagram has rank at most r. The span of such
/// diagrams is a two-sided ideal: products never raise rank.
pub fn ideal_membership(elem: &AlgebraElement, r: usize) -> bool {
    elem.terms().all(|(d, _)| d.rank() <= r)
}

/// Outcome of checking one defining relation over all its index instances.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    /// Human-readable statement, e.g. "t_i^2 = x t_i".
    pub id: String,
    /// Number of index instances evaluated at this width.
    pub instances: usize,
    /// Whether every instance held exactly.
    pub holds: bool,
    /// For a failing relation: the first nonzero difference lhs - rhs.
    pub discrepancy: Option<String>,
}

/// Evaluates the defining relations of the algebra at width k by exact
/// diagram arithmetic. Two squaring rules for t_i are evaluated side by
/// side: the x form is the one the diagram product satisfies, and the
/// (x+1) variant sometimes quoted alongside it is reported failing, with
/// the difference shown.
pub fn check_presentation(k: usize) -> Vec<RelationReport> {
    let s = |i: usize| AlgebraElement::from_diagram(Diagram::s(k, i));
    let t = |i: usize| AlgebraElement::from_diagram(Diagram::t(k, i));
    let p = |i: usize| AlgebraElement::from_diagram(Diagram::p(k, i));
    let one = AlgebraElement::one(k);
    let prod = |factors: &[&AlgebraElement]| -> AlgebraElement {
        factors
            .iter()
            .fold(AlgebraElement::one(k), |acc, f| acc.mul(f).unwrap())
    };

    let mut reports = Vec::new();
    let mut check = |id: &str, pairs: Vec<(AlgebraElement, AlgebraElement)>| {
        let mut discrepancy = None;
        let mut holds = true;
        let instances = pairs.len();
        for (lhs, rhs) in pairs {
            let diff = lhs.sub(&rhs).unwrap();
            if !diff.is_zero() {
                holds = false;
                if discrepancy.is_none() {
                    discrepancy = Some(diff.to_string());
                }
            }
        }
        reports.push(RelationReport {
            id: id.to_string(),
            instances,
            holds,
            discrepancy,
        });
    };

    let si = || 1..k; // valid indices for s_i, t_i
    let pi = || 1..=k; // valid indices for p_i

    check(
        "s_i^2 = 1",
        si().map(|i| (prod(&[&s(i), &s(i)]), one.clone())).collect(),
    );
    check(
        "s_i s_j = s_j s_i, |i-j| > 1",
        far_pairs(si(), si())
            .map(|(i, j)| (prod(&[&s(i), &s(j)]), prod(&[&s(j), &s(i)])))
            .collect(),
    );
    check(
        "s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}",
        (1..k.saturating_sub(1))
            .map(|i| {
                (
                    prod(&[&s(i), &s(i + 1), &s(i)]),
                    prod(&[&s(i + 1), &s(i), &s(i + 1)]),
                )
            })
            .collect(),
    );
    check(
        "t_i^2 = x t_i",
        si()
            .map(|i| (prod(&[&t(i), &t(i)]), t(i).scale(&Polynomial::x())))
            .collect(),
    );
    check(
        "t_i^2 = (x+1) t_i",
        si()
            .map(|i| {
                let xp1 = Polynomial::x().add(&Polynomial::one());
                (prod(&[&t(i), &t(i)]), t(i).scale(&xp1))
            })
            .collect(),
    );
    check(
        "t_i t_j = t_j t_i, |i-j| > 1",
        far_pairs(si(), si())
            .map(|(i, j)| (prod(&[&t(i), &t(j)]), prod(&[&t(j), &t(i)])))
            .collect(),
    );
    check(
        "t_i s_j = s_j t_i, |i-j| > 1",
        far_pairs(si(), si())
            .map(|(i, j)| (prod(&[&t(i), &s(j)]), prod(&[&s(j), &t(i)])))
            .collect(),
    );
    check(
        "t_i s_i = s_i t_i = t_i",
        si()
            .flat_map(|i| {
                [
                    (prod(&[&t(i), &s(i)]), t(i)),
                    (prod(&[&s(i), &t(i)]), t(i)),
                ]
            })
            .collect(),
    );
    check(
        "t_i t_{i±1} t_i = t_i",
        adjacent_pairs(k)
            .map(|(i, j)| (prod(&[&t(i), &t(j), &t(i)]), t(i)))
            .collect(),
    );
    check(
        "s_i t_{i±1} t_i = s_{i±1} t_i",
        adjacent_pairs(k)
            .map(|(i, j)| (prod(&[&s(i), &t(j), &t(i)]), prod(&[&s(j), &t(i)])))
            .collect(),
    );
    check(
        "t_i t_{i±1} s_i = t_i s_{i±1}",
        adjacent_pairs(k)
            .map(|(i, j)| (prod(&[&t(i), &t(j), &s(i)]), prod(&[&t(i), &s(j)])))
            .collect(),
    );
    check(
        "p_i^2 = p_i",
        pi().map(|i| (prod(&[&p(i), &p(i)]), p(i))).collect(),
    );
    check(
        "p_i p_j = p_j p_i, i != j",
        pi()
            .flat_map(|i| pi().map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| (prod(&[&p(i), &p(j)]), prod(&[&p(j), &p(i)])))
            .collect(),
    );
    check(
        "s_i p_i = p_{i+1} s_i",
        si()
            .map(|i| (prod(&[&s(i), &p(i)]), prod(&[&p(i + 1), &s(i)])))
            .collect(),
    );
    check(
        "s_i p_j = p_j s_i, |i-j| > 1",
        far_pairs(si(), pi())
            .map(|(i, j)| (prod(&[&s(i), &p(j)]), prod(&[&p(j), &s(i)])))
            .collect(),
    );
    check(
        "p_i s_i p_i = p_i p_{i+1}",
        si()
            .map(|i| (prod(&[&p(i), &s(i), &p(i)]), prod(&[&p(i), &p(i + 1)])))
            .collect(),
    );
    check(
        "t_i p_j = p_j t_i, |i-j| > 1",
        far_pairs(si(), pi())
            .map(|(i, j)| (prod(&[&t(i), &p(j)]), prod(&[&p(j), &t(i)])))
            .collect(),
    );
    check(
        "t_i p_i = t_i p_{i+1} = t_i p_i p_{i+1}",
        si()
            .flat_map(|i| {
                let target = prod(&[&t(i), &p(i), &p(i + 1)]);
                [
                    (prod(&[&t(i), &p(i)]), target.clone()),
                    (prod(&[&t(i), &p(i + 1)]), target),
                ]
            })
            .collect(),
    );
    check(
        "p_i t_i = p_{i+1} t_i = p_i p_{i+1} t_i",
        si()
            .flat_map(|i| {
                let target = prod(&[&p(i), &p(i + 1), &t(i)]);
                [
                    (prod(&[&p(i), &t(i)]), target.clone()),
                    (prod(&[&p(i + 1), &t(i)]), target),
                ]
            })
            .collect(),
    );
    check(
        "t_i p_i t_i = t_i",
        si()
            .map(|i| (prod(&[&t(i), &p(i), &t(i)]), t(i)))
            .collect(),
    );
    check(
        "p_i t_i p_i = p_i p_{i+1}",
        si()
            .map(|i| (prod(&[&p(i), &t(i), &p(i)]), prod(&[&p(i), &p(i + 1)])))
            .collect(),
    );

    reports
}

fn far_pairs(
    a: impl Iterator<Item = usize> + Clone,
    b: impl Iterator<Item = usize> + Clone,
) -> impl Iterator<Item = (usize, usize)> {
    a.flat_map(move |i| b.clone().map(move |j| (i, j)))
        .filter(|&(i, j)| i.abs_diff(j) > 1)
}

/// Ordered pairs (i, j) with j = i ± 1, both valid s/t indices.
fn adjacent_pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..k)
        .flat_map(|i| [(i, i + 1), (i, i.wrapping_sub(1))])
        .filter(move |&(_, j)| (1..k).contains(&j))
}
