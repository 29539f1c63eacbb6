//! Feasibility and complete Hermitian solution sets of `BXB* ⪰ A` and its
//! strict and reversed variants.
//!
//! With `E = E_B` and `K = A E (E A E)† E A` every solution of `BXB* ⪰ A` is
//! `X̂ + UU* + F_B V + V* F_B`, where
//! `X̂ = B†A(B†)* − B†A E (EAE)† E A (B†)*`; the `⪯` case flips the sign of `UU*`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::block::{bordered, ensure};
use crate::error::{Result, RiaError};
use crate::matrix::{Hermitian, QHerm, QMat};
use crate::sampling::GridSampler;
use crate::spectral::{ef, inr, pinv_q, r, r_h, within, Inertia};

/// Direction of a matrix inequality `BXB* ~ A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `BXB* ⪰ A`.
    Geq,
    /// `BXB* ≻ A`.
    Gt,
    /// `BXB* ⪯ A`.
    Leq,
    /// `BXB* ≺ A`.
    Lt,
    /// `BXB* = A`; only meaningful as a constraint.
    Eq,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Gt | Relation::Lt)
    }

    /// `true` for `⪰`/`≻`.
    pub fn is_lower_bound(self) -> bool {
        matches!(self, Relation::Geq | Relation::Gt)
    }

    /// The relation obtained by `A → −A`, `X → −X`.
    pub fn negated(self) -> Relation {
        match self {
            Relation::Geq => Relation::Leq,
            Relation::Gt => Relation::Lt,
            Relation::Leq => Relation::Geq,
            Relation::Lt => Relation::Gt,
            Relation::Eq => Relation::Eq,
        }
    }

    /// Non-strict counterpart.
    pub fn closure(self) -> Relation {
        match self {
            Relation::Gt => Relation::Geq,
            Relation::Lt => Relation::Leq,
            r => r,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Geq => ">=",
            Relation::Gt => ">",
            Relation::Leq => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        }
    }

    /// Does a residual `BXB* − A` with this inertia satisfy the relation?
    pub fn holds_for(self, residual: &Inertia) -> bool {
        match self {
            Relation::Geq => residual.minus == 0,
            Relation::Gt => residual.minus == 0 && residual.zero == 0,
            Relation::Leq => residual.plus == 0,
            Relation::Lt => residual.plus == 0 && residual.zero == 0,
            Relation::Eq => residual.rank() == 0,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::Geq => "geq",
            Relation::Gt => "gt",
            Relation::Leq => "leq",
            Relation::Lt => "lt",
            Relation::Eq => "eq",
        };
        f.write_str(s)
    }
}

impl FromStr for Relation {
    type Err = RiaError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "geq" | ">=" => Ok(Relation::Geq),
            "gt" | ">" => Ok(Relation::Gt),
            "leq" | "<=" => Ok(Relation::Leq),
            "lt" | "<" => Ok(Relation::Lt),
            "eq" | "=" => Ok(Relation::Eq),
            other => Err(RiaError::Parse(format!("unknown relation '{other}'"))),
        }
    }
}

/// `BXB* ~ A` with `A` Hermitian `m × m` and `B` `m × n`.
#[derive(Debug, Clone)]
pub struct LmiProblem {
    pub a: QHerm,
    pub b: QMat,
    pub rel: Relation,
}

impl LmiProblem {
    pub fn new(a: QHerm, b: QMat, rel: Relation) -> Result<Self> {
        if a.order() != b.rows() {
            return Err(RiaError::DimensionMismatch(format!(
                "A is {0}x{0} but B has {1} rows",
                a.order(),
                b.rows()
            )));
        }
        Ok(LmiProblem { a, b, rel })
    }

    pub fn m(&self) -> usize {
        self.a.order()
    }

    pub fn n(&self) -> usize {
        self.b.cols()
    }

    /// `BXB* − A`.
    pub fn residual(&self, x: &QMat) -> QHerm {
        let bxb = &(&self.b * x) * &self.b.adjoint();
        Hermitian::from_construction(&bxb - self.a.as_mat())
    }

    /// Exact membership test for a Hermitian `X`.
    pub fn is_solution(&self, x: &QMat) -> bool {
        x.is_hermitian_exact() && x.rows() == self.n() && self.rel.holds_for(&inr(&self.residual(x)))
    }

    /// `(A, B, ~) → (−A, B, ~')`, whose solutions are the negatives of these.
    pub fn negated(&self) -> LmiProblem {
        LmiProblem { a: self.a.neg(), b: self.b.clone(), rel: self.rel.negated() }
    }
}

/// Quantities entering the feasibility criteria, with both criterion forms.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityCertificate {
    pub relation: Relation,
    pub feasible: bool,
    /// Criterion through `E_B A E_B`.
    pub projector_form: bool,
    /// Criterion through the inertia of `M₁ = [[A, B], [B*, 0]]`.
    pub inertia_form: bool,
    pub criterion: String,
    pub eae_inertia: Inertia,
    pub rank_eae: usize,
    pub rank_ea: usize,
    pub rank_e: usize,
    pub m1_inertia: Inertia,
    pub rank_ab: usize,
    pub rank_b: usize,
    pub m: usize,
}

/// Decide solvability of `p`. Both criterion forms are evaluated and must agree.
pub fn lmi_feasible(p: &LmiProblem) -> Result<FeasibilityCertificate> {
    let a = p.a.as_mat();
    let (e, _) = ef(&p.b);
    let eae = &(&e * a) * &e;
    let ie = inr(&eae);
    let rank_eae = ie.rank();
    let rank_ea = r(&(&e * a));
    let rank_e = r(&e);
    let m1 = inr(&bordered(a, &p.b)?);
    let rank_ab = r_h(a, &p.b);
    let rank_b = r(&p.b);
    let m = p.m();
    let (proj, inert, criterion) = match p.rel {
        Relation::Geq => (
            ie.plus == 0 && rank_eae == rank_ea,
            m1.plus == rank_b && m1.minus == rank_ab,
            "E_B A E_B <= 0 and r(E_B A E_B) = r(E_B A); i+(M1) = r(B) and i-(M1) = r[A,B]",
        ),
        Relation::Gt => (
            ie.plus == 0 && rank_eae == rank_e,
            m1.minus == m,
            "E_B A E_B <= 0 and r(E_B A E_B) = r(E_B); i-(M1) = m",
        ),
        Relation::Leq => (
            ie.minus == 0 && rank_eae == rank_ea,
            m1.plus == rank_ab && m1.minus == rank_b,
            "E_B A E_B >= 0 and r(E_B A E_B) = r(E_B A); i+(M1) = r[A,B] and i-(M1) = r(B)",
        ),
        Relation::Lt => (
            ie.minus == 0 && rank_eae == rank_e,
            m1.plus == m,
            "E_B A E_B >= 0 and r(E_B A E_B) = r(E_B); i+(M1) = m",
        ),
        Relation::Eq => (rank_ea == 0, rank_ab == rank_b, "E_B A = 0; r[A,B] = r(B)"),
    };
    ensure(proj == inert, "feasibility criteria agree", || {
        format!("{} : projector form {proj}, inertia form {inert}", p.rel)
    })?;
    Ok(FeasibilityCertificate {
        relation: p.rel,
        feasible: proj,
        projector_form: proj,
        inertia_form: inert,
        criterion: criterion.to_string(),
        eae_inertia: ie,
        rank_eae,
        rank_ea,
        rank_e,
        m1_inertia: m1,
        rank_ab,
        rank_b,
        m,
    })
}

fn infeasible(c: &FeasibilityCertificate) -> RiaError {
    RiaError::Infeasible(format!(
        "BXB* {} A has no Hermitian solution ({}); i(M1)={}, r[A,B]={}, r(B)={}",
        c.relation.symbol(),
        c.criterion,
        c.m1_inertia,
        c.rank_ab,
        c.rank_b
    ))
}

/// The two routes to the distinguished solution `X̂`.
#[derive(Debug, Clone)]
pub struct XhatRoutes {
    /// `B†A(B†)* − B†AE(EAE)†EA(B†)*`.
    pub formula: QHerm,
    /// `[0, I]·pinv([[−A, B], [B*, 0]])·[0; I]`, present when `r(EAE) = r(EA)`.
    pub bordered: Option<QMat>,
}

fn xhat_parts(a: &QMat, b: &QMat) -> (QMat, QMat, QMat) {
    let bp = pinv_q(b);
    let (e, _) = ef(b);
    let ea = &e * a;
    let eae = &ea * &e;
    let k = &(&ea.adjoint() * &pinv_q(&eae)) * &ea;
    let xhat = &(&(&bp * a) * &bp.adjoint()) - &(&(&bp * &k) * &bp.adjoint());
    (xhat, k, e)
}

/// `X̂` by the explicit formula, cross-checked against the bordered
/// pseudoinverse whenever that representation applies.
pub fn lmi_xhat(a: &QHerm, b: &QMat) -> Result<XhatRoutes> {
    if a.order() != b.rows() {
        return Err(RiaError::DimensionMismatch("A and B row counts differ".into()));
    }
    let (xhat, _, e) = xhat_parts(a, b);
    let ea = &e * a.as_mat();
    let applicable = r(&(&ea * &e)) == r(&ea);
    let bordered_route = if applicable {
        let (m, n) = (a.order(), b.cols());
        let big = bordered(&-a.as_mat(), b)?;
        let corner = pinv_q(&big).submatrix(m, m, n, n);
        ensure(corner == xhat, "X-hat via bordered pseudoinverse", || format!("formula {xhat:?}, bordered {corner:?}"))?;
        Some(corner)
    } else {
        None
    };
    Ok(XhatRoutes { formula: Hermitian::from_construction(xhat), bordered: bordered_route })
}

/// `X̂ ± UU* + F_B V + V* F_B`, with an optional strictness filter.
#[derive(Debug, Clone)]
pub struct ParametricSolution {
    pub problem: LmiProblem,
    pub xhat: QHerm,
    /// `F_B`.
    pub f_b: QMat,
    /// `A E_B (E_B A E_B)† E_B A`.
    pub k: QHerm,
    /// `+1` for lower-bound relations, `−1` otherwise.
    pub sign: i8,
    /// Whether the `F_B V + V* F_B` term is present.
    pub shift: bool,
    /// Realizations must satisfy `r(A − BXB*) = m`.
    pub strict: bool,
}

impl ParametricSolution {
    pub fn n(&self) -> usize {
        self.problem.n()
    }

    fn check_shapes(&self, u: &QMat, v: &QMat) -> Result<()> {
        let n = self.n();
        if u.shape() != (n, n) || v.shape() != (n, n) {
            return Err(RiaError::DimensionMismatch(format!("U and V must be {n}x{n}")));
        }
        Ok(())
    }

    /// `X(U, V)` without the strictness filter.
    pub fn realize_unfiltered(&self, u: &QMat, v: &QMat) -> Result<QHerm> {
        self.check_shapes(u, v)?;
        let uu = u * &u.adjoint();
        self.realize_gram(&Hermitian::from_construction(uu), v)
    }

    /// `X̂ ± W + F_B V + V* F_B` for a PSD `W` supplied directly.
    pub fn realize_gram(&self, w: &QHerm, v: &QMat) -> Result<QHerm> {
        let n = self.n();
        if w.order() != n || v.shape() != (n, n) {
            return Err(RiaError::DimensionMismatch(format!("W and V must be {n}x{n}")));
        }
        let mut x = if self.sign > 0 { self.xhat.as_mat() + w.as_mat() } else { self.xhat.as_mat() - w.as_mat() };
        if self.shift {
            let fv = &self.f_b * v;
            x = &(&x + &fv) + &fv.adjoint();
        }
        Ok(Hermitian::from_construction(x))
    }

    /// `X(U, V)`. Checks the induced forms of `BXB*` and `A − BXB*`, and for
    /// strict relations rejects `U` with `r(A − BXB*) < m`.
    pub fn realize(&self, u: &QMat, v: &QMat) -> Result<QHerm> {
        let x = self.realize_unfiltered(u, v)?;
        let p = &self.problem;
        let bu = &p.b * u;
        let buub = &bu * &bu.adjoint();
        let bxb = &(&p.b * x.as_mat()) * &p.b.adjoint();
        let a = p.a.as_mat();
        let (induced_bxb, induced_res) = if self.sign > 0 {
            (&(a - self.k.as_mat()) + &buub, self.k.as_mat() - &buub)
        } else {
            (&(a - self.k.as_mat()) - &buub, self.k.as_mat() + &buub)
        };
        ensure(bxb == induced_bxb, "induced form of BXB*", || format!("{bxb:?} vs {induced_bxb:?}"))?;
        let res = a - &bxb;
        ensure(res == induced_res, "induced form of A - BXB*", || format!("{res:?} vs {induced_res:?}"))?;
        if self.strict && r(&res) != p.m() {
            return Err(RiaError::ParameterRejected(format!(
                "r(A - BXB*) = {} < {} so this U does not give a strict solution",
                r(&res),
                p.m()
            )));
        }
        Ok(x)
    }

    /// Grid draw of `(U, V)`.
    pub fn sample_uv(&self, g: &mut GridSampler) -> (QMat, QMat) {
        let n = self.n();
        let rank = g.usize(0, n);
        let u = if g.coin(0.7) { g.mat(n, n) } else { g.low_rank(n, n, rank) };
        let v = if self.shift { g.mat(n, n) } else { QMat::zeros(n, n) };
        (u, v)
    }

    /// Split a solution as `X̂ ± W + F_B V + V* F_B` with `W ⪰ 0`; `None` if
    /// `X` is outside the family. With `P = B†B`, `D = X − X̂` this takes
    /// `W = ±PDP` and `V = F_B D P + ½ F_B D F_B`.
    pub fn decompose(&self, x: &QMat) -> Option<(QHerm, QMat)> {
        let n = self.n();
        if x.shape() != (n, n) || !x.is_hermitian_exact() {
            return None;
        }
        let d = x - self.xhat.as_mat();
        let f = &self.f_b;
        let p = &QMat::identity(n) - f;
        let pdp = &(&p * &d) * &p;
        let w = if self.sign > 0 { pdp } else { -&pdp };
        if inr(&w).minus != 0 {
            return None;
        }
        let fd = f * &d;
        let half = crate::Qi::ratio(1, 2);
        let v = &(&fd * &p) + &(&fd * f).scale(&half);
        if !self.shift && !v.is_zero() {
            return None;
        }
        let w = Hermitian::from_construction(w);
        let back = self.realize_gram(&w, &v).ok()?;
        (back.as_mat() == x).then_some((w, v))
    }
}

/// The general Hermitian solution of a feasible LMI.
pub fn lmi_general_solution(p: &LmiProblem) -> Result<ParametricSolution> {
    if p.rel == Relation::Eq {
        return Err(RiaError::UnsupportedRelation("use the matrix-equation solvers for BXB* = A".into()));
    }
    let cert = lmi_feasible(p)?;
    if !cert.feasible {
        return Err(infeasible(&cert));
    }
    let (xhat, k, _) = xhat_parts(&p.a, &p.b);
    let (_, f_b) = ef(&p.b);
    Ok(ParametricSolution {
        problem: p.clone(),
        xhat: Hermitian::from_construction(xhat),
        f_b,
        k: Hermitian::from_construction(k),
        sign: if p.rel.is_lower_bound() { 1 } else { -1 },
        shift: true,
        strict: p.rel.is_strict(),
    })
}

/// One equality in the `X̂` property battery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountEquality {
    pub name: String,
    pub lhs: usize,
    pub rhs: usize,
}

/// The rank and inertia identities satisfied by `X̂`.
#[derive(Debug, Clone, Serialize)]
pub struct XhatReport {
    pub xhat: QMat,
    pub equalities: Vec<CountEquality>,
    /// Number of sampled realizations checked against `A − BX̂B*` in the Löwner order.
    pub dominance_samples: usize,
}

impl XhatReport {
    pub fn all_hold(&self) -> bool {
        self.equalities.iter().all(|e| e.lhs == e.rhs)
    }
}

/// Evaluate the `X̂` identities and the Löwner extremality of `A − BX̂B*`
/// (checked on `samples` grid realizations).
pub fn xhat_properties(p: &LmiProblem, samples: usize, seed: u64) -> Result<XhatReport> {
    let sol = lmi_general_solution(&LmiProblem { rel: p.rel.closure(), ..p.clone() })?;
    let a = p.a.as_mat();
    let b = &p.b;
    let x = sol.xhat.as_mat();
    let bxb = &(b * x) * &b.adjoint();
    let res = a - &bxb;
    let (ix, ibxb, ia, ires) = (inr(x), inr(&bxb), inr(a), inr(&res));
    let (rab, rb) = (r_h(a, b), r(b));
    let dim = |v: usize, w: usize| (v + rb).checked_sub(w);
    let mut eq = Vec::new();
    let mut push = |name: &str, lhs: usize, rhs: Option<usize>| {
        eq.push(CountEquality { name: name.to_string(), lhs, rhs: rhs.unwrap_or(usize::MAX) });
    };
    let lower = p.rel.is_lower_bound();
    // Lower-bound case; the reversed case swaps + and −.
    let (keep, shrink) = if lower { ((ix.plus, ibxb.plus, ia.plus), (ix.minus, ibxb.minus, ia.minus)) } else { ((ix.minus, ibxb.minus, ia.minus), (ix.plus, ibxb.plus, ia.plus)) };
    let (keep_name, shrink_name) = if lower { ("i+", "i-") } else { ("i-", "i+") };
    push(&format!("{keep_name}(Xhat) = {keep_name}(A)"), keep.0, Some(keep.2));
    push(&format!("{keep_name}(B Xhat B*) = {keep_name}(A)"), keep.1, Some(keep.2));
    push(&format!("{shrink_name}(Xhat) = {shrink_name}(A) + r(B) - r[A,B]"), shrink.0, dim(shrink.2, rab));
    push(&format!("{shrink_name}(B Xhat B*) = {shrink_name}(A) + r(B) - r[A,B]"), shrink.1, dim(shrink.2, rab));
    push("r(Xhat) = r(A) + r(B) - r[A,B]", ix.rank(), dim(ia.rank(), rab));
    push("r(B Xhat B*) = r(A) + r(B) - r[A,B]", ibxb.rank(), dim(ia.rank(), rab));
    let res_sign = if lower { ires.minus } else { ires.plus };
    push(&format!("{shrink_name}(A - B Xhat B*) = r(A - B Xhat B*)"), res_sign, Some(ires.rank()));
    push("r(A - B Xhat B*) = r(A) - r(B Xhat B*)", ires.rank(), ia.rank().checked_sub(ibxb.rank()));
    push("r(A - B Xhat B*) = r[A,B] - r(B)", ires.rank(), rab.checked_sub(rb));
    push("Xhat solves the relaxed inequality", usize::from(sol.problem.is_solution(x)), Some(1));

    let mut g = GridSampler::new(seed);
    for _ in 0..samples {
        let (u, v) = sol.sample_uv(&mut g);
        let xs = sol.realize_unfiltered(&u, &v)?;
        let rs = a - &(&(b * xs.as_mat()) * &b.adjoint());
        let gap = inr(&(&res - &rs));
        let ok = if lower { gap.minus == 0 } else { gap.plus == 0 };
        ensure(ok, "A - B Xhat B* is Loewner-extremal", || format!("sample X = {:?}", xs))?;
    }
    let report = XhatReport { xhat: x.clone(), equalities: eq, dominance_samples: samples };
    if let Some(bad) = report.equalities.iter().find(|e| e.lhs != e.rhs) {
        return Err(RiaError::identity("X-hat property", format!("{}: {} vs {}", bad.name, bad.lhs, bad.rhs)));
    }
    Ok(report)
}

/// Six extremal values of a Hermitian matrix function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtremalValues {
    pub max_rank: usize,
    pub min_rank: usize,
    pub max_iplus: usize,
    pub min_iplus: usize,
    pub max_iminus: usize,
    pub min_iminus: usize,
}

impl ExtremalValues {
    pub fn as_array(&self) -> [usize; 6] {
        [self.max_rank, self.min_rank, self.max_iplus, self.min_iplus, self.max_iminus, self.min_iminus]
    }

    pub fn from_array(v: [usize; 6]) -> Self {
        ExtremalValues { max_rank: v[0], min_rank: v[1], max_iplus: v[2], min_iplus: v[3], max_iminus: v[4], min_iminus: v[5] }
    }

    /// Values for `−f`: inertia indices trade places.
    pub fn swapped(&self) -> Self {
        ExtremalValues {
            max_rank: self.max_rank,
            min_rank: self.min_rank,
            max_iplus: self.max_iminus,
            min_iplus: self.min_iminus,
            max_iminus: self.max_iplus,
            min_iminus: self.min_iplus,
        }
    }

    /// The constant function with value inertia `i`.
    pub fn point(i: &Inertia) -> Self {
        ExtremalValues::from_array([i.rank(), i.rank(), i.plus, i.plus, i.minus, i.minus])
    }

    /// Does an observed inertia lie within every bound?
    pub fn contains(&self, i: &Inertia) -> bool {
        (self.min_rank..=self.max_rank).contains(&i.rank())
            && (self.min_iplus..=self.max_iplus).contains(&i.plus)
            && (self.min_iminus..=self.max_iminus).contains(&i.minus)
    }
}

/// Extremal matrices and ranks/inertias of `BXB*` over the solution set.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionSetReport {
    pub relation: Relation,
    /// Löwner-minimal (for `⪰`) or maximal (for `⪯`) value of `BXB*`: `A − K`.
    pub extremal_bxb: QMat,
    /// Same for `BXB* − A`: `−K`.
    pub extremal_residual: QMat,
    pub bxb: ExtremalValues,
    pub residual_max_rank: usize,
    pub residual_min_rank: usize,
}

/// Löwner-extremal `BXB*` and `BXB* − A`, and the extremal ranks/inertias of `BXB*`.
pub fn solution_set_extremal(p: &LmiProblem) -> Result<SolutionSetReport> {
    if !matches!(p.rel, Relation::Geq | Relation::Leq) {
        return Err(RiaError::UnsupportedRelation(format!("solution-set extremes need >= or <=, got {}", p.rel)));
    }
    let sol = lmi_general_solution(p)?;
    let a = p.a.as_mat();
    let ia = inr(a);
    let rb = r(&p.b);
    let rab = r_h(a, &p.b);
    let k = sol.k.as_mat();
    let (same, other) = if p.rel == Relation::Geq { (ia.plus, ia.minus) } else { (ia.minus, ia.plus) };
    let grow = (rb + other).checked_sub(rab).ok_or_else(|| RiaError::identity("solution set extremes", "r(B) + i(A) < r[A,B]"))?;
    let v = ExtremalValues::from_array([rb, same, rb, same, grow, 0]);
    let bxb = if p.rel == Relation::Geq { v } else { v.swapped() };
    Ok(SolutionSetReport {
        relation: p.rel,
        extremal_bxb: a - k,
        extremal_residual: -k,
        bxb,
        residual_max_rank: rab,
        residual_min_rank: rab - rb,
    })
}

/// Which of the semidefinite special cases applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PsdCase {
    /// `BXB* ⪰ A ⪰ 0`.
    GeqPsd,
    /// `BXB* ≻ A ⪰ 0`.
    GtPsd,
    /// `BXB* ⪯ A ⪯ 0`.
    LeqNsd,
    /// `BXB* ≺ A ⪯ 0`.
    LtNsd,
    /// `X ⪰ 0` with `BXB* ⪰ A ⪰ 0`.
    GeqPsdWithPsdX,
    /// `X ⪰ 0` with `BXB* ≻ A ⪰ 0`.
    GtPsdWithPsdX,
}

#[derive(Debug, Clone)]
pub struct PsdSpecialCase {
    pub case: PsdCase,
    pub feasible: bool,
    /// `R(A) ⊆ R(B)` or `r(B) = m`, whichever the case uses.
    pub criterion: String,
    pub family: Option<ParametricSolution>,
}

/// Semidefinite right-hand sides: solvability reduces to a range or rank
/// test and the solution family to `B†A(B†)* ± UU* (+ F_B V + V* F_B)`.
/// With `psd_solution`, only `⪰`/`≻` are allowed and `X` itself is kept PSD.
pub fn psd_special_cases(p: &LmiProblem, psd_solution: bool) -> Result<PsdSpecialCase> {
    let ia = inr(&p.a);
    let case = match (p.rel, psd_solution) {
        (Relation::Geq, false) => PsdCase::GeqPsd,
        (Relation::Gt, false) => PsdCase::GtPsd,
        (Relation::Leq, false) => PsdCase::LeqNsd,
        (Relation::Lt, false) => PsdCase::LtNsd,
        (Relation::Geq, true) => PsdCase::GeqPsdWithPsdX,
        (Relation::Gt, true) => PsdCase::GtPsdWithPsdX,
        (rel, _) => return Err(RiaError::UnsupportedRelation(format!("no semidefinite special case for {rel}"))),
    };
    if p.rel.is_lower_bound() && ia.minus != 0 {
        return Err(RiaError::SignConditionViolated("A must be positive semidefinite".into()));
    }
    if !p.rel.is_lower_bound() && ia.plus != 0 {
        return Err(RiaError::SignConditionViolated("A must be negative semidefinite".into()));
    }
    let (feasible, criterion) = if p.rel.is_strict() {
        (r(&p.b) == p.m(), "r(B) = m")
    } else {
        (within(&p.a, &p.b), "R(A) in R(B)")
    };
    let general = lmi_feasible(p)?;
    ensure(general.feasible == feasible, "semidefinite special case feasibility", || {
        format!("{criterion} gives {feasible}, general criterion gives {}", general.feasible)
    })?;
    let family = if feasible {
        let bp = pinv_q(&p.b);
        let base = &(&bp * p.a.as_mat()) * &bp.adjoint();
        let sol = lmi_general_solution(p)?;
        ensure(&base == sol.xhat.as_mat(), "semidefinite special case base", || "B†A(B†)* differs from X-hat".into())?;
        Some(ParametricSolution { shift: !psd_solution, ..sol })
    } else {
        None
    };
    Ok(PsdSpecialCase { case, feasible, criterion: criterion.to_string(), family })
}
