//! Coefficients `b_λ^μ`, their inverse matrix, and Kontsevich cycles as polynomials.

mod polynomial;
mod single;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use polynomial::{MmmPolynomial, PolynomialJson};
pub use single::{b_single_on, b_single_reference, mask_sign_sum, tree_cup_product, ChainStats};

use crate::linalg::{inverse, Matrix};
use crate::partition::{refinements, Partition};
use crate::rational::{double_factorial_odd, format_q, pow_neg2, q, witten_coefficient, Q};
use crate::trees::{FaceLattice, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("weight {weight} is outside the computed range (brute force up to {limit}; use long mode for 4)")]
    OutOfComputedRange { weight: u32, limit: u32 },
    #[error("coefficient matrix is singular")]
    SingularMatrix,
    #[error("partition must have positive parts here: {0}")]
    ZeroPart(Partition),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Fast,
    Long,
}

impl Mode {
    /// Largest weight `m` for which `b^{(m)}` is found by enumerating `K^{2m}`.
    pub fn brute_force_limit(self) -> u32 {
        match self {
            Mode::Fast => 3,
            Mode::Long => 4,
        }
    }
}

/// `1/((-2)^{m+1}(2m+1)!!)`.
pub fn diagonal_closed_form(m: u32) -> Q {
    Q::new(BigInt::one(), witten_coefficient(m))
}

type ProgressSink = Box<dyn FnMut(&str)>;

/// Memoizing front end for the coefficient pipeline.
#[derive(Default)]
pub struct CoefficientEngine {
    mode: Mode,
    singles: BTreeMap<Vec<u32>, Q>,
    lattices: BTreeMap<usize, FaceLattice>,
    progress: Option<ProgressSink>,
}

impl CoefficientEngine {
    pub fn new(mode: Mode) -> Self {
        CoefficientEngine { mode, ..Default::default() }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Receives one line per enumeration started.
    pub fn with_progress(mut self, f: impl FnMut(&str) + 'static) -> Self {
        self.progress = Some(Box::new(f));
        self
    }

    fn lattice(&mut self, n: usize) -> Result<&FaceLattice, CoeffError> {
        if !self.lattices.contains_key(&n) {
            if let Some(p) = self.progress.as_mut() {
                p(&format!("building face lattice of K^{n}"));
            }
            self.lattices.insert(n, FaceLattice::new(n)?);
        }
        Ok(&self.lattices[&n])
    }

    /// `b_λ^{(m)}` by enumeration, parts in the given order.
    pub fn b_single_enumerated(&mut self, parts: &[u32]) -> Result<Q, CoeffError> {
        if let Some(v) = self.singles.get(parts) {
            return Ok(v.clone());
        }
        if parts.contains(&0) {
            return Err(CoeffError::ZeroPart(Partition::new(parts.to_vec())));
        }
        let m: u32 = parts.iter().sum();
        let limit = self.mode.brute_force_limit();
        if m == 0 || m > limit {
            return Err(CoeffError::OutOfComputedRange { weight: m, limit });
        }
        if let Some(p) = self.progress.as_mut() {
            p(&format!("enumerating chains of K^{} for parts {:?}", 2 * m, parts));
        }
        let lattice = self.lattice(2 * m as usize)?;
        let (v, _) = b_single_on(lattice, parts);
        self.singles.insert(parts.to_vec(), v.clone());
        Ok(v)
    }

    /// `b_λ^{(m)}`: enumerated when in range, closed form for a single part beyond it.
    pub fn b_single(&mut self, parts: &[u32]) -> Result<Q, CoeffError> {
        let m: u32 = parts.iter().sum();
        if parts.len() == 1 && m > self.mode.brute_force_limit() {
            return Ok(diagonal_closed_form(m));
        }
        self.b_single_enumerated(parts)
    }

    /// `b_λ^μ = Σ_π Π_i b_{λ_π(i)}^{μ_i}`; zero unless `λ` refines `μ`.
    pub fn b_general(&mut self, lambda: &[u32], mu: &Partition) -> Result<Q, CoeffError> {
        let mut total = q(0);
        for (blocks, mult) in refinements(lambda, mu) {
            let mut prod = q(mult as i64);
            for b in &blocks {
                prod *= self.b_single(b)?;
            }
            total += prod;
        }
        Ok(total)
    }

    fn b_on(&mut self, order: &[Partition]) -> Result<Matrix, CoeffError> {
        let mut m = vec![vec![q(0); order.len()]; order.len()];
        for (i, mu) in order.iter().enumerate() {
            for (j, lambda) in order.iter().enumerate() {
                m[i][j] = self.b_general(lambda.parts(), mu)?;
            }
        }
        Ok(m)
    }

    /// `B[i][j] = b_{order[j]}^{order[i]}` over the partitions of `n`.
    pub fn b_matrix(&mut self, n: u32) -> Result<CoefficientMatrix, CoeffError> {
        let limit = self.mode.brute_force_limit();
        if n == 0 || n > limit {
            return Err(CoeffError::OutOfComputedRange { weight: n, limit });
        }
        let order = Partition::all_of(n);
        let entries = self.b_on(&order)?;
        Ok(CoefficientMatrix { n, order, entries })
    }

    /// `A = B^{-1}`, so that `A[i][j] = a_{order[j]}^{order[i]}`.
    pub fn a_matrix(&mut self, n: u32) -> Result<CoefficientMatrix, CoeffError> {
        let b = self.b_matrix(n)?;
        let entries = inverse(&b.entries).ok_or(CoeffError::SingularMatrix)?;
        Ok(CoefficientMatrix { n, order: b.order, entries })
    }

    /// `[W_μ] = Σ_λ a_μ^λ κ̃_λ`, with zero parts handled by the trivalent-vertex count.
    pub fn w_polynomial(&mut self, mu: &Partition) -> Result<MmmPolynomial, CoeffError> {
        let positive = mu.positive();
        let zeros = mu.zero_count();
        let base = if positive.is_empty() {
            MmmPolynomial::one()
        } else {
            // only partitions coarser than μ enter its column of A
            let up: Vec<Partition> =
                Partition::all_of(positive.weight()).into_iter().filter(|l| positive.refines(l)).collect();
            let b = self.b_on(&up)?;
            let a = inverse(&b).ok_or(CoeffError::SingularMatrix)?;
            let col = up.iter().position(|l| *l == positive).unwrap();
            let mut p = MmmPolynomial::zero();
            for (i, l) in up.iter().enumerate() {
                p.add_term(l.clone(), a[i][col].clone());
            }
            p
        };
        if zeros == 0 {
            return Ok(base);
        }
        let shift: i64 = positive.parts().iter().map(|p| 2 * *p as i64 + 1).sum();
        let t = MmmPolynomial::monomial(Partition::new(vec![0]), q(-2)) + MmmPolynomial::constant(q(-shift));
        Ok(t.binomial(zeros as u32) * base)
    }
}

/// A matrix indexed by the partitions of `n`, in [`Partition::all_of`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    pub n: u32,
    pub order: Vec<Partition>,
    pub entries: Matrix,
}

impl CoefficientMatrix {
    pub fn is_upper_triangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, r)| r.iter().take(i).all(|x| x.is_zero()))
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(format_q).collect()).collect()
    }
}

/// JSON layout `{"n":2,"order":["2","1,1"],"B":[…],"A":[…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CoefficientTable {
    pub n: u32,
    pub order: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
}

impl CoefficientTable {
    pub fn new(b: &CoefficientMatrix, a: &CoefficientMatrix) -> Self {
        CoefficientTable {
            n: b.n,
            order: b.order.iter().map(|p| p.to_string()).collect(),
            b: b.render(),
            a: a.render(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckKind {
    Theorem,
    Conjecture,
    Extended,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

impl CheckResult {
    fn new(name: String, kind: CheckKind, computed: String, expected: String) -> Self {
        let pass = computed == expected;
        CheckResult { name, kind, computed, expected, pass }
    }
}

fn kappa(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec())
}

/// `[W_n] = (-2)^{n+1}(2n+1)!! κ̃_n`.
pub fn witten_closed_form(n: u32) -> MmmPolynomial {
    MmmPolynomial::monomial(kappa(&[n]), Q::from_integer(witten_coefficient(n)))
}

/// `[W_{n,1}] = 3(-2)^{n+3}(2n+1)!!(κ̃_nκ̃_1 - κ̃_{n+1}) - (-2)^{n+2}(2n+5)!!κ̃_{n+1}`, halved for `n = 1`.
pub fn w_n1_closed_form(n: u32) -> MmmPolynomial {
    let c = Q::from_integer(BigInt::from(3) * pow_neg2(n + 3) * double_factorial_odd(n + 1));
    let d = Q::from_integer(pow_neg2(n + 2) * double_factorial_odd(n + 3));
    let mut p = MmmPolynomial::monomial(kappa(&[n, 1]), c.clone());
    p.add_term(kappa(&[n + 1]), -c - d);
    if n == 1 {
        p = p.scale(&Q::new(BigInt::one(), BigInt::from(2)));
    }
    p
}

/// `[W_{k,0}] = (-2)^{k+2}(2k+1)!!κ̃_kκ̃_0 - (2k+1)(-2)^{k+1}(2k+1)!!κ̃_k`, halved for `k = 0`.
pub fn w_k0_closed_form(k: u32) -> MmmPolynomial {
    let df = double_factorial_odd(k + 1);
    let mut p = MmmPolynomial::monomial(kappa(&[k, 0]), Q::from_integer(pow_neg2(k + 2) * &df));
    p.add_term(kappa(&[k]), Q::from_integer(-BigInt::from(2 * k + 1) * pow_neg2(k + 1) * df));
    if k == 0 {
        p = p.scale(&Q::new(BigInt::one(), BigInt::from(2)));
    }
    p
}

/// Conjectured `[W_{n,k}] = a_n a_k(κ̃_nκ̃_k - κ̃_{n+k}) + ½ a_{n+k+1} κ̃_{n+k}`, halved when `n = k`.
pub fn w_nk_conjectured(n: u32, k: u32) -> MmmPolynomial {
    let ank = Q::from_integer(witten_coefficient(n) * witten_coefficient(k));
    let half = Q::new(witten_coefficient(n + k + 1), BigInt::from(2));
    let mut p = MmmPolynomial::monomial(kappa(&[n, k]), ank.clone());
    p.add_term(kappa(&[n + k]), half - ank);
    if n == k {
        p = p.scale(&Q::new(BigInt::one(), BigInt::from(2)));
    }
    p
}

/// `[W_{1,1,1}] = 288κ̃_1³ + 4176κ̃_1κ̃_2 + 20736κ̃_3`.
pub fn w_111_expected() -> MmmPolynomial {
    let mut p = MmmPolynomial::monomial(kappa(&[1, 1, 1]), q(288));
    p.add_term(kappa(&[2, 1]), q(4176));
    p.add_term(kappa(&[3]), q(20736));
    p
}

/// `a_n b_{n,1}^{n+1} = (2n+5)/12 - 1/(2(2n+3))`.
pub fn b_n1_closed_form(n: u32) -> Q {
    let n = n as i64;
    let lhs = Q::new(BigInt::from(2 * n + 5), BigInt::from(12)) - Q::new(BigInt::one(), BigInt::from(2 * (2 * n + 3)));
    lhs / Q::from_integer(witten_coefficient(n as u32))
}

/// `a_λ^λ = 1/(Π m_i! (b_{λ_i}^{λ_i})^{m_i})`.
pub fn leading_coefficient(lambda: &Partition) -> Q {
    let mut b = q(1);
    for (part, mult) in lambda.multiplicities() {
        let fact: BigInt = (1..=mult as i64).map(BigInt::from).product();
        let mut d = Q::from_integer(fact);
        for _ in 0..mult {
            d *= diagonal_closed_form(part);
        }
        b *= d;
    }
    q(1) / b
}

/// Closed-form identities in weight up to `n`, in the engine's range.
pub fn closed_form_checks(engine: &mut CoefficientEngine, n: u32) -> Result<Vec<CheckResult>, CoeffError> {
    let limit = engine.mode().brute_force_limit();
    let mut out = Vec::new();
    let render = |p: &MmmPolynomial| p.to_string();
    for m in 1..=n.min(limit) {
        let b = engine.b_single_enumerated(&[m])?;
        out.push(CheckResult::new(
            format!("b[{m}]^[{m}] enumerated"),
            CheckKind::Theorem,
            format_q(&b),
            format_q(&diagonal_closed_form(m)),
        ));
    }
    for m in 1..=n {
        let w = engine.w_polynomial(&kappa(&[m]))?;
        out.push(CheckResult::new(format!("W[{m}]*"), CheckKind::Theorem, render(&w), render(&witten_closed_form(m))));
        let sign_ok = w.coefficient(&kappa(&[m])).is_positive() == (m % 2 == 1);
        out.push(CheckResult::new(
            format!("sign of a[{m}]^[{m}]"),
            CheckKind::Theorem,
            if sign_ok { "alternates" } else { "wrong" }.into(),
            "alternates".into(),
        ));
    }
    for m in 1..n.min(limit) {
        let b = engine.b_single_enumerated(&[m, 1])?;
        out.push(CheckResult::new(
            format!("b[{m},1]^[{}]", m + 1),
            CheckKind::Theorem,
            format_q(&b),
            format_q(&b_n1_closed_form(m)),
        ));
        let w = engine.w_polynomial(&kappa(&[m, 1]))?;
        let kind = if m + 1 > 3 { CheckKind::Extended } else { CheckKind::Theorem };
        out.push(CheckResult::new(format!("W[{m},1]*"), kind, render(&w), render(&w_n1_closed_form(m))));
    }
    for k in 0..=n {
        let w = engine.w_polynomial(&kappa(&[k, 0]))?;
        out.push(CheckResult::new(format!("W[{k},0]*"), CheckKind::Theorem, render(&w), render(&w_k0_closed_form(k))));
    }
    for lambda in (1..=n).flat_map(Partition::all_of) {
        if lambda.len() < 2 {
            continue;
        }
        // diagonal entries need only single-part coefficients
        let b = engine.b_general(lambda.parts(), &lambda)?;
        out.push(CheckResult::new(
            format!("a[{lambda}]^[{lambda}]"),
            CheckKind::Theorem,
            format_q(&(q(1) / b)),
            format_q(&leading_coefficient(&lambda)),
        ));
    }
    if n >= 3 && limit >= 3 {
        let w = engine.w_polynomial(&kappa(&[1, 1, 1]))?;
        out.push(CheckResult::new("W[1,1,1]*".into(), CheckKind::Extended, render(&w), render(&w_111_expected())));
    }
    for total in 4..=n.min(limit) {
        for k in 2..=total / 2 {
            let nn = total - k;
            let w = engine.w_polynomial(&kappa(&[nn, k]))?;
            out.push(CheckResult::new(
                format!("W[{nn},{k}]*"),
                CheckKind::Conjecture,
                render(&w),
                render(&w_nk_conjectured(nn, k)),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn matrices_of_weight_one_and_two() {
        let mut e = CoefficientEngine::new(Mode::Fast);
        let b1 = e.b_matrix(1).unwrap();
        assert_eq!(b1.entries, vec![vec![q_frac(1, 12)]]);
        assert_eq!(e.a_matrix(1).unwrap().entries, vec![vec![q(12)]]);
        let b2 = e.b_matrix(2).unwrap();
        assert_eq!(b2.entries, vec![vec![q_frac(-1, 120), q_frac(29, 720)], vec![q(0), q_frac(1, 72)]]);
        let a2 = e.a_matrix(2).unwrap();
        assert_eq!(a2.entries, vec![vec![q(-120), q(348)], vec![q(0), q(72)]]);
        let t = CoefficientTable::new(&b2, &a2);
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"n":2,"order":["2","1,1"],"B":[["-1/120","29/720"],["0","1/72"]],"A":[["-120","348"],["0","72"]]}"#
        );
    }

    #[test]
    fn out_of_range() {
        let mut e = CoefficientEngine::new(Mode::Fast);
        assert!(matches!(e.b_matrix(5), Err(CoeffError::OutOfComputedRange { weight: 5, .. })));
        assert!(matches!(e.w_polynomial(&p("3,1")), Err(CoeffError::OutOfComputedRange { .. })));
        assert_eq!(e.w_polynomial(&p("4")).unwrap(), witten_closed_form(4));
    }

    #[test]
    fn degenerate_zero() {
        let mut e = CoefficientEngine::new(Mode::Fast);
        assert_eq!(e.w_polynomial(&p("1,0")).unwrap().to_string(), "-24*k1*k0 - 36*k1");
        assert_eq!(e.w_polynomial(&p("0,0")).unwrap(), w_k0_closed_form(0));
        assert_eq!(e.w_polynomial(&p("0")).unwrap().to_string(), "-2*k0");
    }

    #[test]
    fn closed_form_report_through_weight_three() {
        let mut e = CoefficientEngine::new(Mode::Fast);
        let report = closed_form_checks(&mut e, 3).unwrap();
        for c in &report {
            assert!(c.pass, "{c:?}");
        }
        assert!(report.iter().any(|c| c.name == "W[1,1,1]*"));
        assert!(report.iter().all(|c| c.kind != CheckKind::Conjecture));
        let a3 = e.a_matrix(3).unwrap();
        let b3 = e.b_matrix(3).unwrap();
        assert!(b3.is_upper_triangular() && a3.is_upper_triangular());
        assert!(crate::linalg::is_identity(&crate::linalg::multiply(&a3.entries, &b3.entries)));
    }

    #[test]
    fn closed_forms_by_hand() {
        assert_eq!(w_n1_closed_form(1).to_string(), "72*k1^2 + 348*k2");
        assert_eq!(w_n1_closed_form(2).to_string(), "-1440*k2*k1 - 13680*k3");
        assert_eq!(w_n1_closed_form(3).to_string(), "20160*k3*k1 + 312480*k4");
        assert_eq!(w_nk_conjectured(2, 2).to_string(), "7200*k2^2 + 159120*k4");
        assert_eq!(w_nk_conjectured(2, 1), w_n1_closed_form(2));
        assert_eq!(b_n1_closed_form(1), q_frac(29, 720));
        assert_eq!(b_n1_closed_form(2), q_frac(-19, 3360));
        assert_eq!(leading_coefficient(&p("2,2")), q(7200));
        assert_eq!(leading_coefficient(&p("2,1")), q(-1440));
    }
}
