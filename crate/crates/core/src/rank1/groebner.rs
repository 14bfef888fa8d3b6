//! Certified absence of rank-one elements through the ideal of maximal minors.
//!
//! With `{C_k}` a basis of `perp(W)`, `x yᵀ ∈ W` for some `y ≠ 0` exactly when
//! the `n × K` matrix `[C_1 x | … | C_K x]` drops rank, i.e. when every `n × n`
//! minor vanishes at `x`. That ideal is homogeneous, so `W` has no rank-one
//! element iff its projective zero set is empty, iff some power of every
//! coordinate lies in the ideal. Graded-lex Buchberger finds the exponents;
//! a certificate records them and is re-checked with a Macaulay matrix.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use crate::error::Error;
use crate::exact::QScalar;
use crate::rank1::certificate::{Certificate, Evidence, Subject, Verdict};
use crate::rank1::n2::rank_one_decision_n2;
use crate::rank1::rationalize::exact_partner;
use crate::subspace::{RowSpace, SparseVec, Subspace};

/// Ambients above this are left `UNDECIDED` by the algebraic backend.
pub const MAX_AMBIENT: usize = 6;

/// Column counts above this make the minor expansion too large to attempt.
const MAX_PERP_DIM: usize = 40;

/// Exponent vector, ordered graded-lexicographically with `x_0 > x_1 > …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    fn var(n: usize, v: usize) -> Self {
        let mut e = vec![0; n];
        e[v] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    fn div(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The variable if this is `x_v^e` with `e ≥ 1`.
    fn pure_power(&self) -> Option<(usize, usize)> {
        let mut nz = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        let (v, &e) = nz.next()?;
        nz.next().is_none().then_some((v, e as usize))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial over ℚ(i); the largest key is the leading monomial.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly(BTreeMap<Monomial, QScalar>);

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn leading(&self) -> Option<(&Monomial, &QScalar)> {
        self.0.last_key_value()
    }

    fn add_term(&mut self, m: Monomial, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.0.remove(&m);
                }
            }
            None => {
                self.0.insert(m, c);
            }
        }
    }

    /// `self − c · m · g`.
    fn sub_scaled(&mut self, c: &QScalar, m: &Monomial, g: &Poly) {
        for (gm, gc) in &g.0 {
            self.add_term(gm.mul(m), -(c * gc));
        }
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::default();
        for (a, ca) in &self.0 {
            for (b, cb) in &o.0 {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    fn times_monomial(&self, m: &Monomial) -> Poly {
        Poly(self.0.iter().map(|(k, c)| (k.mul(m), c.clone())).collect())
    }

    fn monic(mut self) -> Poly {
        if let Some(inv) = self.leading().and_then(|(_, c)| c.inv()) {
            for c in self.0.values_mut() {
                *c = &*c * &inv;
            }
        }
        self
    }
}

/// Full reduction of `f` modulo `g` (all leading coefficients 1).
fn normal_form(mut f: Poly, g: &[Poly]) -> Poly {
    let mut r = Poly::default();
    while let Some((m, c)) = f.0.pop_last() {
        match g.iter().find(|p| p.leading().is_some_and(|(lm, _)| lm.divides(&m))) {
            Some(p) => {
                let lm = p.leading().expect("nonzero").0.clone();
                let q = m.div(&lm);
                // the leading term cancels exactly; subtract the rest
                for (pm, pc) in p.0.iter().rev().skip(1) {
                    f.add_term(pm.mul(&q), -(&c * pc));
                }
            }
            None => {
                r.0.insert(m, c);
            }
        }
    }
    r
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, _) = f.leading().expect("nonzero");
    let (gm, _) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let mut s = f.times_monomial(&l.div(fm));
    s.sub_scaled(&QScalar::one(), &l.div(gm), g);
    s
}

/// `(C x)_i` for each row `i`, as linear forms in `x_0 … x_{n−1}`.
fn linear_columns(perp: &[crate::exact::QMatrix], n: usize) -> Vec<Vec<Poly>> {
    perp.iter()
        .map(|c| {
            (0..n)
                .map(|i| {
                    let mut p = Poly::default();
                    for j in 0..n {
                        p.add_term(Monomial::var(n, j), c.get(i, j).clone());
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// All nonzero maximal minors of `[C_1 x | … | C_K x]`, by Laplace expansion
/// over column subsets.
fn maximal_minors(target: &Subspace) -> Result<Vec<Poly>, Error> {
    let n = target.ambient();
    let perp = target.perp().basis();
    let k = perp.len();
    if k < n {
        return Err(Error::Certificate("perp is too small for maximal minors".into()));
    }
    if k > MAX_PERP_DIM {
        return Err(Error::Certificate(format!("perp dimension {k} exceeds {MAX_PERP_DIM}")));
    }
    let cols = linear_columns(&perp, n);
    let mut layer: HashMap<u64, Poly> = HashMap::new();
    let mut unit = Poly::default();
    unit.add_term(Monomial::one(n), QScalar::one());
    layer.insert(0, unit);
    for r in 0..n {
        let mut next: HashMap<u64, Poly> = HashMap::new();
        for (&mask, det) in &layer {
            for (c, col) in cols.iter().enumerate() {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let mut term = col[r].mul(det);
                if above % 2 == 1 {
                    term = Poly(term.0.into_iter().map(|(m, v)| (m, -v)).collect());
                }
                let slot = next.entry(mask | (1 << c)).or_default();
                for (m, v) in term.0 {
                    slot.add_term(m, v);
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        layer = next;
    }
    let mut out: Vec<(u64, Poly)> = layer.into_iter().collect();
    out.sort_by_key(|(m, _)| *m);
    Ok(out.into_iter().map(|(_, p)| p).collect())
}

/// All monomials of degree `d` in `n` variables, in increasing order.
fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            let used: usize = prefix.iter().map(|&e| e as usize).sum();
            let mut e = prefix.clone();
            e.push((d - used) as u16);
            out.push(Monomial(e));
            return;
        }
        let used: usize = prefix.iter().map(|&e| e as usize).sum();
        for e in 0..=(d - used) {
            prefix.push(e as u16);
            rec(n, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Linear basis of the degree-`d` part of the ideal generated by homogeneous `gens`.
fn macaulay_space(gens: &[Poly], n: usize, d: usize) -> (RowSpace, HashMap<Monomial, usize>) {
    let cols = monomials_of_degree(n, d);
    let index: HashMap<Monomial, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut space = RowSpace::new(cols.len());
    for g in gens {
        let gd = g.leading().map_or(0, |(m, _)| m.degree());
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(n, d - gd) {
            let mut row: SparseVec = g.0.iter().map(|(k, c)| (index[&k.mul(&m)], c.clone())).collect();
            row.sort_by_key(|e| e.0);
            space.insert(&row);
            if space.dim() == cols.len() {
                return (space, index);
            }
        }
    }
    (space, index)
}

/// Re-check that each `x_v^d` lies in the minor ideal of `perp(target)`, and
/// that every coordinate is covered.
pub fn check_pure_powers(target: &Subspace, pure_powers: &[(usize, usize)]) -> Result<(), Error> {
    let n = target.ambient();
    if n == 0 || n > MAX_AMBIENT {
        return Err(Error::Certificate(format!("minor-ideal evidence supports ambient 1..={MAX_AMBIENT}")));
    }
    for v in 0..n {
        if !pure_powers.iter().any(|&(w, _)| w == v) {
            return Err(Error::Certificate(format!("no pure power recorded for x_{v}")));
        }
    }
    let minors = maximal_minors(target)?;
    let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(v, d) in pure_powers {
        if v >= n || d < n {
            return Err(Error::Certificate(format!("pure power x_{v}^{d} is out of range")));
        }
        by_degree.entry(d).or_default().push(v);
    }
    for (d, vars) in by_degree {
        let (space, index) = macaulay_space(&minors, n, d);
        for v in vars {
            let mut e = vec![0u16; n];
            e[v] = d as u16;
            let row = vec![(index[&Monomial(e)], QScalar::one())];
            if !space.contains(&row) {
                return Err(Error::Certificate(format!("x_{v}^{d} is not in the minor ideal")));
            }
        }
    }
    Ok(())
}

enum Outcome {
    /// Leading monomials include a pure power of every variable.
    Covered(Vec<Poly>),
    /// A complete Gröbner basis without full coverage: the zero set is nonempty.
    Nonempty,
    Exhausted,
}

/// Graded-lex Buchberger with the product and chain criteria, stopping as
/// soon as every variable has a pure-power leading monomial.
fn buchberger(gens: Vec<Poly>, n: usize, budget: u64, deadline: Option<Instant>, steps: &mut u64) -> Outcome {
    let mut g: Vec<Poly> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let covered = |g: &[Poly]| {
        let mut seen = vec![false; n];
        for p in g {
            if let Some((v, _)) = p.leading().and_then(|(m, _)| m.pure_power()) {
                seen[v] = true;
            }
        }
        seen.iter().all(|&s| s)
    };
    let add = |g: &mut Vec<Poly>, pending: &mut BTreeSet<(usize, usize)>, p: Poly| {
        let j = g.len();
        g.push(p.monic());
        for i in 0..j {
            pending.insert((i, j));
        }
    };
    for p in gens {
        let r = normal_form(p, &g);
        if !r.is_zero() {
            add(&mut g, &mut pending, r);
        }
    }
    loop {
        if covered(&g) {
            return Outcome::Covered(g);
        }
        // normal selection: smallest lcm first
        let Some(&(i, j)) = pending.iter().min_by(|a, b| {
            let la = g[a.0].leading().unwrap().0.lcm(g[a.1].leading().unwrap().0);
            let lb = g[b.0].leading().unwrap().0.lcm(g[b.1].leading().unwrap().0);
            la.cmp(&lb).then(a.cmp(b))
        }) else {
            return Outcome::Nonempty;
        };
        pending.remove(&(i, j));
        let (mi, mj) = (g[i].leading().unwrap().0.clone(), g[j].leading().unwrap().0.clone());
        if mi.coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].leading().unwrap().0.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        *steps += 1;
        if *steps > budget || deadline.is_some_and(|d| Instant::now() >= d) {
            return Outcome::Exhausted;
        }
        let r = normal_form(s_poly(&g[i], &g[j]), &g);
        if !r.is_zero() {
            add(&mut g, &mut pending, r);
        }
    }
}

/// Smallest `D` with every monomial of degree `D` in `⟨LM(g)⟩`, given that
/// the leading monomials cover a pure power of each variable.
fn saturation_degree(g: &[Poly], n: usize) -> usize {
    let lms: Vec<Monomial> = g.iter().filter_map(|p| p.leading().map(|(m, _)| m.clone())).collect();
    let mut caps = vec![u16::MAX; n];
    for m in &lms {
        if let Some((v, e)) = m.pure_power() {
            caps[v] = caps[v].min(e as u16);
        }
    }
    // standard monomials live in the box e_v < caps[v]
    let mut best = 0;
    let mut e = vec![0u16; n];
    loop {
        let m = Monomial(e.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            best = best.max(m.degree());
        }
        let mut v = 0;
        loop {
            if v == n {
                return best + 1;
            }
            e[v] += 1;
            if e[v] < caps[v] {
                break;
            }
            e[v] = 0;
            v += 1;
        }
    }
}

/// Certified emptiness of rank-one elements in `w` within a step budget.
pub fn minor_ideal_emptiness(w: &Subspace, budget: u64) -> Certificate {
    minor_ideal_emptiness_until(w, budget, None)
}

pub fn minor_ideal_emptiness_until(w: &Subspace, budget: u64, deadline: Option<Instant>) -> Certificate {
    let subject = Subject::Space { space: w.clone() };
    let n = w.ambient();
    let undecided = |steps: u64, note: &str| {
        Certificate::undecided(
            subject.clone(),
            "minor-ideal",
            Evidence::Search { seed: 0, iterations: steps, residual: f64::NAN, note: note.into() },
            steps,
        )
    };
    if w.dim() == 0 {
        return Certificate::new(subject, Verdict::NoRankOne, "minor-ideal", Evidence::TrivialPerp, 0);
    }
    let k = n * n - w.dim();
    if k < n {
        // the columns C_k e_1 cannot span, so some y works for x = e_1
        let mut x = vec![QScalar::zero(); n];
        x[0] = QScalar::one();
        let y = exact_partner(w, &x).expect("fewer constraints than unknowns");
        return Certificate::new(subject, Verdict::RankOneFound, "minor-ideal", Evidence::Witness { x, y }, 0);
    }
    if n > MAX_AMBIENT || k > MAX_PERP_DIM {
        return undecided(0, "ambient too large for the minor-ideal backend");
    }
    let minors = match maximal_minors(w) {
        Ok(m) => m,
        Err(e) => return undecided(0, &e.to_string()),
    };
    let mut steps = 0;
    match buchberger(minors, n, budget, deadline, &mut steps) {
        Outcome::Covered(g) => {
            let d = saturation_degree(&g, n);
            let pure_powers: Vec<(usize, usize)> = (0..n).map(|v| (v, d)).collect();
            let cert =
                Certificate::new(subject.clone(), Verdict::NoRankOne, "minor-ideal", Evidence::MinorIdeal { pure_powers }, steps);
            match cert.check() {
                Ok(()) => cert,
                Err(e) => undecided(steps, &format!("pure powers failed re-check: {e}")),
            }
        }
        Outcome::Nonempty if n == 2 => {
            let mut c = rank_one_decision_n2(w).expect("ambient 2");
            c.strategy = "minor-ideal".into();
            c.budget_used = steps;
            c.reseal();
            c
        }
        Outcome::Nonempty => undecided(steps, "minor ideal has projective zeros"),
        Outcome::Exhausted => undecided(steps, "step budget exhausted"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixtures::n_subspace;
    use crate::exact::QMatrix;
    use crate::rank1::staircase::staircase_evidence;

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 3]);
        assert!(a > b && c > a);
    }

    #[test]
    fn scalars_in_m2_have_no_rank_one() {
        let c = minor_ideal_emptiness(&Subspace::scalars(2), 1000);
        assert_eq!(c.verdict, Verdict::NoRankOne, "{:?}", c.evidence);
        c.verify().unwrap();
    }

    #[test]
    fn agrees_with_staircase_on_lemma6_subspace() {
        let w = n_subspace();
        assert!(staircase_evidence(&w).is_some());
        let c = minor_ideal_emptiness(&w, 5000);
        assert_eq!(c.verdict, Verdict::NoRankOne, "{:?}", c.evidence);
        c.verify().unwrap();
    }

    #[test]
    fn pencil_in_m2_has_rank_one() {
        let w = Subspace::span(2, &[QMatrix::from_ints(&[&[1, 2], &[0, 1]]), QMatrix::from_ints(&[&[0, 1], &[3, 1]])])
            .unwrap();
        let c = minor_ideal_emptiness(&w, 1000);
        assert_eq!(c.verdict, Verdict::RankOneFound);
        c.verify().unwrap();
    }

    #[test]
    fn tampered_pure_power_rejected() {
        let w = Subspace::scalars(2);
        assert!(check_pure_powers(&w, &[(0, 2)]).is_err());
        assert!(check_pure_powers(&w, &[(0, 1), (1, 1)]).is_err());
    }
}
