//! Polynomials in the classes `κ̃_i`, one monomial per partition.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::partition::Partition;
use crate::rational::{format_q, q, Q};

/// `Σ c_λ κ̃_λ` with `κ̃_λ = Π_i κ̃_{λ_i}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MmmPolynomial {
    terms: BTreeMap<Partition, Q>,
}

impl MmmPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(q(1))
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(Partition::empty(), c)
    }

    pub fn monomial(kappa: Partition, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(kappa, c);
        p
    }

    pub fn add_term(&mut self, kappa: Partition, c: Q) {
        let e = self.terms.entry(kappa).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coefficient(&self, kappa: &Partition) -> Q {
        self.terms.get(kappa).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut p = Self::zero();
        for (k, v) in &self.terms {
            p.add_term(k.clone(), v * c);
        }
        p
    }

    /// `t(t-1)…(t-k+1)/k!`.
    pub fn binomial(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for i in 0..k {
            acc = acc * (self.clone() + Self::constant(q(-(i as i64))));
        }
        let fact: Q = (1..=k as i64).map(q).product();
        acc.scale(&(q(1) / fact))
    }

    /// Terms with more factors first, then by larger indices.
    fn display_order(&self) -> Vec<(&Partition, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| b.0.cmp(a.0)));
        v
    }

    pub fn to_json(&self, partition: &Partition) -> PolynomialJson {
        PolynomialJson {
            partition: partition.to_string(),
            terms: self.terms.iter().map(|(k, v)| (k.to_string(), format_q(v))).collect(),
        }
    }
}

fn render_monomial(kappa: &Partition) -> String {
    let mut out = Vec::new();
    for (part, mult) in kappa.multiplicities().into_iter().rev() {
        if mult == 1 {
            out.push(format!("k{part}"));
        } else {
            out.push(format!("k{part}^{mult}"));
        }
    }
    out.join("*")
}

impl fmt::Display for MmmPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (kappa, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if kappa.is_empty() {
                f.write_str(&format_q(&a))?;
            } else if a.is_one() {
                f.write_str(&render_monomial(kappa))?;
            } else {
                write!(f, "{}*{}", format_q(&a), render_monomial(kappa))?;
            }
        }
        Ok(())
    }
}

impl Add for MmmPolynomial {
    type Output = MmmPolynomial;

    fn add(mut self, rhs: MmmPolynomial) -> MmmPolynomial {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
        self
    }
}

impl Mul for MmmPolynomial {
    type Output = MmmPolynomial;

    fn mul(self, rhs: MmmPolynomial) -> MmmPolynomial {
        let mut p = MmmPolynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                p.add_term(a.join(b), x * y);
            }
        }
        p
    }
}

/// `{"partition":"1,1","terms":{"1,1":"72","2":"348"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct PolynomialJson {
    pub partition: String,
    pub terms: BTreeMap<String, String>,
}
