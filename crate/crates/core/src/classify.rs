//! Decision procedures for the exceptional parameter sets: hypotheses on
//! the pole sequences, the six rational cases at `r = 2`, the removals in
//! the independence statements for recurrence sums and for function
//! values, and membership in `q^Z`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lucaspair::LucasPairParams;
use crate::numerics::{root_of_unity_exact, AlgebraicInput, ExactComplex, PrecisionContext, Scalar};
use crate::periodic::PeriodicSeq;
use crate::series::zeta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    T1,
    T2,
    T3,
    L3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Rational,
    NotRational,
    UndeterminedByPaper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub case_id: String,
    pub witnesses: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub theorem: Theorem,
    pub generic: bool,
    pub cases: Vec<Case>,
    pub removals: Vec<String>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

impl CaseReport {
    fn new(theorem: Theorem) -> Self {
        CaseReport { theorem, generic: true, cases: vec![], removals: vec![], notes: vec![], verdict: None }
    }

    fn push(&mut self, id: &str, witnesses: &[(&str, String)], removal: Option<String>) {
        self.cases.push(Case {
            case_id: id.to_string(),
            witnesses: witnesses.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        });
        self.removals.extend(removal);
        self.generic = false;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipResult {
    pub member: bool,
    pub exponent: Option<i64>,
    /// Decided within tolerance rather than exactly.
    pub numeric: bool,
}

fn tol_bits(ctx: &PrecisionContext) -> u32 {
    ctx.bits() / 2
}

fn log2_abs(x: &Scalar, bits: u32) -> f64 {
    let c = x.embed(bits);
    (c.log2_abs_upper() + c.log2_abs_lower()) / 2.0
}

/// Largest exponent for which membership is decided by exact powering.
const EXACT_POW_LIMIT: i64 = 4096;

/// Whether `x = q^n` for some integer `n`, with `n` isolated by magnitudes.
pub fn power_membership_scalar(x: &Scalar, q: &Scalar, ctx: &PrecisionContext) -> Result<MembershipResult> {
    let bits = ctx.bits() + 64;
    let tol = tol_bits(ctx);
    if x.is_zero_within(ctx.bits()).0 {
        return Err(Error::InvalidInput("membership of zero".into()));
    }
    match q {
        Scalar::Exact(e) => {
            if e.cmp_abs(&ExactComplex::one())? == std::cmp::Ordering::Equal {
                return Err(Error::Ambiguous);
            }
        }
        Scalar::Approx(_) => {
            if log2_abs(q, bits).abs() < 2f64.powi(-(tol.min(60) as i32)) {
                return Err(Error::Ambiguous);
            }
        }
    }
    let lx = log2_abs(x, bits);
    let lq = log2_abs(q, bits);
    let n = (lx / lq).round();
    if !n.is_finite() || n.abs() > 1e12 {
        return Ok(MembershipResult { member: false, exponent: None, numeric: true });
    }
    let n = n as i64;
    if let (Scalar::Exact(xe), Scalar::Exact(qe)) = (x, q) {
        if n.abs() <= EXACT_POW_LIMIT {
            match qe.pow(n).and_then(|p| p.sub(xe)) {
                Ok(d) => {
                    let member = d.is_zero();
                    return Ok(MembershipResult { member, exponent: member.then_some(n), numeric: false });
                }
                Err(Error::FieldMismatch(..)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let d = q.embed(bits).powi(n)?.sub(&x.embed(bits));
    let member = d.log2_abs_upper() - lx < -(tol as f64);
    Ok(MembershipResult { member, exponent: member.then_some(n), numeric: true })
}

pub fn power_membership(x: &AlgebraicInput, q: &AlgebraicInput, ctx: &PrecisionContext) -> Result<MembershipResult> {
    let b = ctx.bits() + 64;
    power_membership_scalar(&Scalar::from_input(x, b), &Scalar::from_input(q, b), ctx)
}

/// Outcome of a three-way test that may only be decidable within tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Decided {
    holds: bool,
    numeric: bool,
}

fn equal(x: &Scalar, y: &Scalar, ctx: &PrecisionContext) -> Result<Decided> {
    let d = x.sub(y, ctx.bits() + 64)?;
    let (holds, numeric) = d.is_zero_within(tol_bits(ctx));
    Ok(Decided { holds, numeric })
}

fn abs_equal(x: &Scalar, y: &Scalar, ctx: &PrecisionContext) -> Result<Decided> {
    if let (Scalar::Exact(a), Scalar::Exact(b)) = (x, y) {
        match a.cmp_abs(b) {
            Ok(o) => return Ok(Decided { holds: o == std::cmp::Ordering::Equal, numeric: false }),
            Err(Error::FieldMismatch(..)) => {}
            Err(e) => return Err(e),
        }
    }
    let bits = ctx.bits() + 64;
    let (a, b) = (x.embed(bits), y.embed(bits));
    let d = a.mul(&a.conj()).sub(&b.mul(&b.conj()));
    let holds = d.contains_zero() || d.log2_abs_upper() < -(tol_bits(ctx) as f64);
    Ok(Decided { holds, numeric: true })
}

fn fmt_scalar(x: &Scalar) -> String {
    match x {
        Scalar::Exact(e) => e.to_string(),
        Scalar::Approx(c) => {
            let z = c.to_complex64();
            format!("{:.15}{:+.15}i", z.re, z.im)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypothesisMode {
    Lemma2,
    Remark1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub ok: bool,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

/// Checks the pole-sequence hypotheses on a finite index window.
pub fn check_lemma2_hypotheses(
    alphas: &BTreeMap<i64, AlgebraicInput>,
    betas: &BTreeMap<i64, AlgebraicInput>,
    mode: HypothesisMode,
    ctx: &PrecisionContext,
) -> Result<Diagnostics> {
    let bits = ctx.bits() + 64;
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    let one = Scalar::int(1);
    let a: BTreeMap<i64, Scalar> = alphas.iter().map(|(&l, x)| (l, Scalar::from_input(x, bits))).collect();
    let b: BTreeMap<i64, Scalar> = betas.iter().map(|(&l, x)| (l, Scalar::from_input(x, bits))).collect();
    let mut flag = |d: Decided, what: &str| {
        if d.numeric && d.holds {
            notes.push(format!("{what}: equal within tolerance only"));
        }
        d.holds
    };
    for (l, x) in alphas.iter().chain(betas.iter()) {
        if x.is_zero() {
            violations.push(format!("pole parameter at index {l} is zero"));
        }
    }
    if !violations.is_empty() {
        return Ok(Diagnostics { ok: false, violations, notes });
    }
    match a.get(&0) {
        None => violations.push("alpha_0 missing".into()),
        Some(a0) => {
            if !flag(abs_equal(a0, &one, ctx)?, "|alpha_0| = 1") {
                violations.push(format!("|alpha_0| != 1 (alpha_0 = {})", fmt_scalar(a0)));
            }
        }
    }
    let keys: Vec<i64> = a.keys().copied().collect();
    for (i, &l1) in keys.iter().enumerate() {
        for &l2 in &keys[i + 1..] {
            if flag(abs_equal(&a[&l1], &a[&l2], ctx)?, &format!("|alpha_{l1}| = |alpha_{l2}|")) {
                violations.push(format!("|alpha_{l1}| = |alpha_{l2}|"));
            }
        }
    }
    match mode {
        HypothesisMode::Lemma2 => {
            for (&l, al) in &a {
                let Some(be) = b.get(&l) else {
                    violations.push(format!("beta_{l} missing"));
                    continue;
                };
                let d = be.div(al, bits)?;
                if !flag(abs_equal(&d, &one, ctx)?, &format!("|delta_{l}| = 1")) {
                    violations.push(format!("|delta_{l}| != 1"));
                }
                if flag(equal(&d, &one, ctx)?, &format!("delta_{l} = 1")) {
                    violations.push(format!("delta_{l} = 1"));
                }
            }
        }
        HypothesisMode::Remark1 => {
            let bk: Vec<i64> = b.keys().copied().collect();
            for (i, &l1) in bk.iter().enumerate() {
                for &l2 in &bk[i + 1..] {
                    if flag(abs_equal(&b[&l1], &b[&l2], ctx)?, &format!("|beta_{l1}| = |beta_{l2}|")) {
                        violations.push(format!("|beta_{l1}| = |beta_{l2}|"));
                    }
                }
            }
            for (&l1, al) in &a {
                for (&l2, be) in &b {
                    if flag(abs_equal(al, be, ctx)?, &format!("|alpha_{l1}| = |beta_{l2}|")) {
                        violations.push(format!("|alpha_{l1}| = |beta_{l2}|"));
                    }
                }
            }
        }
    }
    Ok(Diagnostics { ok: violations.is_empty(), violations, notes })
}

/// Rationality of `sum p_mu gamma_mu(a, z) + u0 phi_0(a, z) + v0 lambda_0(a, z)`.
#[allow(clippy::too_many_arguments)]
pub fn classify_lemma3(
    r: u64,
    a: &AlgebraicInput,
    alpha0: &AlgebraicInput,
    beta0: &AlgebraicInput,
    p_coeffs: &[AlgebraicInput],
    u0: &AlgebraicInput,
    v0: &AlgebraicInput,
    ctx: &PrecisionContext,
) -> Result<CaseReport> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("r = {r} < 2")));
    }
    if p_coeffs.len() as u64 != r - 1 {
        return Err(Error::InvalidInput(format!("expected {} p coefficients, got {}", r - 1, p_coeffs.len())));
    }
    let bits = ctx.bits() + 64;
    let s = |x: &AlgebraicInput| Scalar::from_input(x, bits);
    let (sa, al, be, su, sv) = (s(a), s(alpha0), s(beta0), s(u0), s(v0));
    let one = Scalar::int(1);
    let mut bad = Vec::new();
    if alpha0.is_zero() || !abs_equal(&al, &one, ctx)?.holds {
        bad.push("|alpha_0| != 1".to_string());
    }
    if beta0.is_zero() || !abs_equal(&be, &one, ctx)?.holds {
        bad.push("|beta_0| != 1".to_string());
    }
    if bad.is_empty() && equal(&al, &be, ctx)?.holds {
        bad.push("delta_0 = 1".to_string());
    }
    if p_coeffs.iter().all(|p| p.is_zero()) && u0.is_zero() && v0.is_zero() {
        bad.push("all coefficients are zero".to_string());
    }
    if !bad.is_empty() {
        return Err(Error::InvalidHypotheses(bad));
    }
    let mut rep = CaseReport::new(Theorem::L3);
    let a2 = sa.mul(&sa, bits)?;
    let is = |x: &Scalar, y: &Scalar| equal(x, y, ctx);
    let a2_is = |v: i64| is(&a2, &Scalar::int(v)).map(|d| d.holds);
    let verdict = if r >= 4 {
        Verdict::NotRational
    } else if r == 3 {
        if a2_is(9)? {
            rep.notes.push("r = 3 with a^2 = 9 is left open".into());
            Verdict::UndeterminedByPaper
        } else {
            Verdict::NotRational
        }
    } else if a2_is(2)? || a2_is(4)? {
        rep.notes.push("r = 2 with a^2 in {2, 4} is left open".into());
        Verdict::UndeterminedByPaper
    } else {
        let z = Scalar::Exact(zeta());
        let z2 = Scalar::Exact(zeta().pow(2)?);
        let z4 = Scalar::Exact(zeta().pow(4)?);
        let zero = Scalar::int(0);
        let mut numeric = false;
        let mut t = |d: Decided| {
            numeric |= d.numeric;
            d.holds
        };
        let p1_zero = t(is(&s(&p_coeffs[0]), &zero)?);
        let a_one = t(is(&sa, &one)?);
        let a_neg = t(is(&sa, &Scalar::int(-1))?);
        let mut hits = Vec::new();
        if p1_zero {
            if a_one && t(is(&al, &one)?) && t(is(&sv, &zero)?) {
                hits.push(1);
            }
            if a_one && t(is(&be, &one)?) && t(is(&su, &zero)?) {
                hits.push(2);
            }
            let neg_a_zeta = sa.neg().mul(&z, bits)?;
            if (a_one || a_neg) && t(is(&al, &z2)?) && t(is(&be, &z4)?) && t(is(&sv, &neg_a_zeta.mul(&su, bits)?)?) {
                hits.push(if a_one { 3 } else { 4 });
            }
            if (a_one || a_neg) && t(is(&al, &z4)?) && t(is(&be, &z2)?) && t(is(&su, &neg_a_zeta.mul(&sv, bits)?)?) {
                hits.push(if a_one { 5 } else { 6 });
            }
        }
        if numeric {
            rep.notes.push("some conditions decided within tolerance 2^(-P/2)".into());
        }
        for c in &hits {
            rep.push(&format!("{c}"), &[("a", fmt_scalar(&sa)), ("alpha0", fmt_scalar(&al)), ("beta0", fmt_scalar(&be))], None);
        }
        if hits.is_empty() {
            Verdict::NotRational
        } else {
            Verdict::Rational
        }
    };
    rep.verdict = Some(verdict);
    Ok(rep)
}

/// Display names for the two recurrences: `F`/`L` for the Fibonacci and
/// Lucas specializations, `R`/`S` otherwise.
fn series_names(params: &LucasPairParams) -> (&'static str, &'static str) {
    let fib = LucasPairParams::fibonacci();
    let same_roots = params.gamma1 == fib.gamma1 && params.gamma2 == fib.gamma2;
    let one = AlgebraicInput::int(1);
    let name = |c1: &AlgebraicInput, c2: &AlgebraicInput, default: &'static str| {
        if !same_roots {
            default
        } else if *c1 == fib.g1 && *c2 == fib.g2 {
            "F"
        } else if *c1 == one && *c2 == one {
            "L"
        } else {
            default
        }
    };
    (name(&params.g1, &params.g2, "R"), name(&params.h1, &params.h2, "S"))
}

fn theta(sign: i64) -> Scalar {
    Scalar::Exact(root_of_unity_exact(3, sign).expect("order 3").expect("exact"))
}

/// Exceptional cases for `Q_{mu,r}`, `R_{l,r}`, `S_{l,r}`.
pub fn classify_thm2(
    params: &LucasPairParams,
    b: &PeriodicSeq,
    c: &PeriodicSeq,
    search_bound: u64,
    ctx: &PrecisionContext,
) -> Result<CaseReport> {
    params.validate()?;
    let bits = ctx.bits() + 64;
    let s = |x: &AlgebraicInput| Scalar::from_input(x, bits);
    let q = params.ratio()?;
    let omega = params.omega()?;
    let (rn, sn) = series_names(params);
    let mut rep = CaseReport::new(Theorem::T2);
    let om = power_membership_scalar(&omega, &q, ctx)?;
    if om.member {
        let l1 = om.exponent.unwrap_or(0);
        rep.push("not-covered", &[("ell1", l1.to_string())], None);
        rep.notes.push(format!(
            "Omega = (gamma1/gamma2)^{l1}: g2 {rn}_{{l,r}} = h2 gamma2^{l1} {sn}_{{l+{l1},r}} for every l when the coefficient sequences are all ones"
        ));
        return Ok(rep);
    }
    rep.notes.push(format!(
        "cases 1/2 test {rn}_{{l0}} = 0 (equivalently e_{{l0,2}} = 1), the reading consistent with F_0 = 0"
    ));
    let bound = search_bound as i64;
    let in_window = |m: &MembershipResult, rep: &mut CaseReport, what: &str| -> Option<i64> {
        let l = m.exponent?;
        if m.numeric {
            rep.notes.push(format!("{what}: decided within tolerance only"));
        }
        if l.abs() > bound {
            rep.notes.push(format!("{what}: l0 = {l} lies outside the search bound {bound}"));
            return None;
        }
        Some(l)
    };
    for (id, name, c1, c2, seq) in [("1", rn, &params.g1, &params.g2, b), ("2", sn, &params.h1, &params.h2, c)] {
        let x = s(c2).div(&s(c1), bits)?.neg();
        let m = power_membership_scalar(&x, &q, ctx)?;
        if let Some(l0) = in_window(&m, &mut rep, &format!("{name}_l0 = 0")) {
            if seq.is_constant() {
                rep.push(id, &[("ell0", l0.to_string())], Some(format!("{name}_{{{l0},2}}")));
            } else {
                rep.notes.push(format!("{name}_{{{l0}}} = 0 but the coefficient sequence is not constant"));
            }
        }
    }
    for (id, sign, label) in [("3", 1, "exp(2*pi*i/3)"), ("4", -1, "exp(-2*pi*i/3)")] {
        let th = theta(sign);
        let x = s(&params.g2).div(&s(&params.g1), bits)?.mul(&th, bits)?.neg();
        let m = power_membership_scalar(&x, &q, ctx)?;
        let Some(l0) = in_window(&m, &mut rep, &format!("case {id} l0")) else { continue };
        let ot = power_membership_scalar(&omega.mul(&th, bits)?, &q, ctx)?;
        if ot.member {
            if ot.numeric {
                rep.notes.push(format!("case {id}: Omega*theta membership decided within tolerance only"));
            }
            rep.push(
                id,
                &[("ell0", l0.to_string()), ("theta", label.to_string()), ("omega_theta_exponent", ot.exponent.unwrap_or(0).to_string())],
                Some(format!("{rn}_{{{l0},2^j}} (j >= 1)")),
            );
        }
    }
    Ok(rep)
}

/// Exceptional cases for the function values `Gamma`, `Phi`, `Lambda`.
pub fn classify_thm3(
    alphas: &BTreeMap<i64, AlgebraicInput>,
    betas: &BTreeMap<i64, AlgebraicInput>,
    b: &PeriodicSeq,
    c: &PeriodicSeq,
    mode: HypothesisMode,
    ctx: &PrecisionContext,
) -> Result<CaseReport> {
    let diag = check_lemma2_hypotheses(alphas, betas, mode, ctx)?;
    if !diag.ok {
        return Err(Error::InvalidHypotheses(diag.violations));
    }
    let bits = ctx.bits() + 64;
    let mut rep = CaseReport::new(Theorem::T3);
    rep.notes.extend(diag.notes);
    let a0 = Scalar::from_input(&alphas[&0], bits);
    let b0 = betas.get(&0).map(|x| Scalar::from_input(x, bits));
    let one = Scalar::int(1);
    if b.is_constant() && equal(&a0, &one, ctx)?.holds {
        rep.push("1", &[("alpha0", fmt_scalar(&a0))], Some("Phi_{0,2}".into()));
    }
    if let Some(b0) = &b0 {
        if c.is_constant() && equal(b0, &one, ctx)?.holds {
            rep.push("2", &[("beta0", fmt_scalar(b0))], Some("Lambda_{0,2}".into()));
        }
        for (id, sign, removal) in [("3", 1, "Phi_{0,2^j} (j >= 1)"), ("4", -1, "Lambda_{0,2^j} (j >= 1)")] {
            let th = theta(sign);
            if equal(&a0, &th, ctx)?.holds && equal(b0, &a0.mul(&a0, bits)?, ctx)?.holds {
                if mode == HypothesisMode::Remark1 {
                    rep.notes.push(format!("case {id} suppressed under disjoint moduli"));
                } else {
                    rep.push(id, &[("alpha0", fmt_scalar(&a0)), ("beta0", fmt_scalar(b0))], Some(removal.into()));
                }
            }
        }
    }
    Ok(rep)
}
