//! Positivity of the one-shot zero-error capacities, read off the noncommutative graph.
//!
//! `C̄₀ > 0` iff the graph is not transitive. `Q̄₀ > 0` iff some nonzero pair
//! `(φ, ψ)` has `⟨ψ|A|φ⟩ = 0` and `⟨φ|A|φ⟩ = ⟨ψ|A|ψ⟩` for every `A` in the graph.

pub mod ledger;
pub mod search;
pub mod superactivation;

use serde::{Deserialize, Serialize};

use crate::constructions::certificates::{direct_sum_transitive, fixture_knowledge, l1_transitive, l2_transitive};
use crate::constructions::fixtures::{extreme_vectors, l1, l2};
use crate::error::Error;
use crate::exact::float::to_float;
use crate::exact::{kernel, Field, Matrix, QMatrix, QScalar, QuadScalar};
use crate::rank1::certificate::{Certificate, Evidence, QuadPair, Subject, Verdict};
use crate::rank1::rationalize::rationalize_f64;
use crate::rank1::tensor::functional_witness;
use crate::rank1::{is_transitive, is_transitive_tensor, Knowledge, SearchConfig};
use crate::subspace::Subspace;

/// Coordinate pairs and float search are only tried up to this ambient dimension.
pub const SEARCH_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Capacity {
    Cbar0,
    Qbar0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Positive,
    Zero,
    Undecided,
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Transitivity certificate of the graph.
    Transitivity,
    RegisteredWitness,
    /// Commutant of the graph: a partial isometry `W` with `W†W ⊥ WW†` for `Q̄₀`,
    /// an invariant subspace for `C̄₀`.
    Commutant,
    CoordinatePair,
    Heuristic,
    /// `n = 2`: any witness pair is an orthonormal basis diagonalizing the whole graph.
    QubitGraph,
    /// Algebra with commutative commutant (for a tensor subject, both factors).
    AlgebraCommutant,
    /// `C̄₀ = 0` forces `Q̄₀ = 0`.
    ClassicalZero,
    /// A `Q̄₀` witness pair is in particular a `C̄₀` witness.
    FromQuantumWitness,
    /// Zero for the product because a non-superactivation clause fired and both factors are zero.
    Blocked,
    /// Not needed for the classification.
    NotEvaluated,
    Exhausted,
}

/// `(φ, ψ)` over ℚ(i), or over `ℚ(i)(√d)` with `d` real and positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "snake_case")]
pub enum VectorPair {
    Rational { phi: Vec<QScalar>, psi: Vec<QScalar> },
    Quadratic { radicand: QScalar, phi: Vec<QuadPair>, psi: Vec<QuadPair> },
}

impl VectorPair {
    pub fn rational(phi: Vec<QScalar>, psi: Vec<QScalar>) -> Self {
        VectorPair::Rational { phi, psi }
    }

    pub fn len(&self) -> usize {
        match self {
            VectorPair::Rational { phi, .. } => phi.len(),
            VectorPair::Quadratic { phi, .. } => phi.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn quad(&self) -> Result<(Vec<QuadScalar>, Vec<QuadScalar>), Error> {
        match self {
            VectorPair::Rational { phi, psi } => Ok((lift(phi), lift(psi))),
            VectorPair::Quadratic { radicand, phi, psi } => {
                if !radicand.is_real() || radicand.real_sign() != Some(std::cmp::Ordering::Greater) {
                    return Err(Error::Invalid("quadratic witnesses need a real positive radicand".into()));
                }
                let conv = |v: &[QuadPair]| v.iter().map(|x| x.to_quad(radicand)).collect::<Result<Vec<_>, _>>();
                Ok((conv(phi)?, conv(psi)?))
            }
        }
    }
}

fn lift(v: &[QScalar]) -> Vec<QuadScalar> {
    v.iter().map(QuadScalar::from_q).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityVerdict {
    pub capacity: Capacity,
    pub status: Status,
    pub route: Route,
    pub witness: Option<VectorPair>,
    pub certificate: Option<Certificate>,
    pub note: String,
}

impl PositivityVerdict {
    fn new(capacity: Capacity, status: Status, route: Route) -> Self {
        PositivityVerdict { capacity, status, route, witness: None, certificate: None, note: String::new() }
    }

    fn with_witness(mut self, w: VectorPair) -> Self {
        self.witness = Some(w);
        self
    }

    fn with_certificate(mut self, c: Certificate) -> Self {
        self.certificate = Some(c);
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn is_positive(&self) -> bool {
        self.status == Status::Positive
    }

    pub fn is_zero(&self) -> bool {
        self.status == Status::Zero
    }

    /// Exact re-check of the witness, certificate or structural predicate behind the verdict.
    pub fn verify(&self, subject: &Subject) -> Result<(), Error> {
        let fail = |m: &str| Err(Error::Certificate(format!("{:?} {:?} via {:?}: {m}", self.capacity, self.status, self.route)));
        if let Some(c) = &self.certificate {
            c.verify()?;
            if !same_operator_space(&c.subject, subject) {
                return fail("certificate is about a different subject");
            }
        }
        match self.status {
            Status::Undecided => Ok(()),
            Status::Positive => match (&self.witness, &self.certificate) {
                (Some(w), _) => {
                    let ok = match self.capacity {
                        Capacity::Cbar0 => cbar0_witness_check_pair(subject, w)?,
                        Capacity::Qbar0 => qbar0_pair_report_any(subject, w)?.holds(),
                    };
                    if ok {
                        Ok(())
                    } else {
                        fail("witness does not satisfy the defining equations")
                    }
                }
                (None, Some(c)) if self.capacity == Capacity::Cbar0 && c.verdict == Verdict::NotTransitive => Ok(()),
                _ => fail("positive verdict without exact evidence"),
            },
            Status::Zero => match self.route {
                Route::Transitivity | Route::ClassicalZero => match &self.certificate {
                    Some(c) if c.verdict == Verdict::Transitive => Ok(()),
                    _ => fail("zero verdict needs a transitivity certificate"),
                },
                Route::QubitGraph => match subject {
                    Subject::Space { space } if space.ambient() == 2 && space.dim() > 1 => Ok(()),
                    _ => fail("qubit argument needs a graph in M₂ larger than the scalars"),
                },
                Route::AlgebraCommutant => {
                    if factors(subject).iter().all(|g| g.is_algebra() && is_commutative(&g.commutant().basis())) {
                        Ok(())
                    } else {
                        fail("graph is not an algebra with commutative commutant")
                    }
                }
                _ => fail("route cannot establish a zero capacity"),
            },
        }
    }
}

/// Equality of operator spaces, seeing through the factored tensor form.
fn same_operator_space(a: &Subject, b: &Subject) -> bool {
    if a == b {
        return true;
    }
    let explicit = |s: &Subject| match s {
        Subject::Space { space } => Some(space.clone()),
        Subject::Tensor { left, right } if left.ambient() * right.ambient() <= SEARCH_LIMIT => Some(left.tensor(right)),
        Subject::Tensor { .. } => None,
    };
    matches!((explicit(a), explicit(b)), (Some(x), Some(y)) if x == y)
}

fn factors(subject: &Subject) -> Vec<&Subspace> {
    match subject {
        Subject::Space { space } => vec![space],
        Subject::Tensor { left, right } => vec![left, right],
    }
}

/// Graphs of channels are symmetric and contain the identity.
pub fn check_graph(subject: &Subject) -> Result<(), Error> {
    for g in factors(subject) {
        if !g.is_symmetric() {
            return Err(Error::Invalid("graph is not closed under adjoints".into()));
        }
        if !g.contains_identity() {
            return Err(Error::Invalid("graph does not contain the identity".into()));
        }
    }
    Ok(())
}

fn check_vectors<F: Field>(subject: &Subject, phi: &[F], psi: &[F]) -> Result<(), Error> {
    let n = subject.ambient();
    if phi.len() != n || psi.len() != n {
        return Err(Error::Shape(format!("vectors must have length {n}")));
    }
    if phi.iter().all(F::is_zero) || psi.iter().all(F::is_zero) {
        return Err(Error::Invalid("vectors must be nonzero".into()));
    }
    Ok(())
}

/// `ψ† A φ`.
fn sesq<F: Field>(psi: &[F], a: &Matrix<F>, phi: &[F]) -> F {
    let mut acc = F::zero();
    for (i, p) in psi.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let mut row = F::zero();
        for (j, f) in phi.iter().enumerate() {
            let aij = a.get(i, j);
            if !aij.is_zero() && !f.is_zero() {
                row = row.plus(&aij.times(f));
            }
        }
        acc = acc.plus(&p.conjugate().times(&row));
    }
    acc
}

/// Entry-wise data of a factor basis with zeros dropped.
fn sparse_basis<F: Field>(g: &Subspace) -> Vec<Vec<(usize, usize, F)>> {
    g.basis()
        .iter()
        .map(|b| {
            let n = b.cols();
            b.data()
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k / n, k % n, F::from_q(x)))
                .collect()
        })
        .collect()
}

/// `Σ_{bd} M_{bd} B_{bd}`.
fn pair_with<F: Field>(m: &Matrix<F>, b: &[(usize, usize, F)]) -> F {
    b.iter().fold(F::zero(), |acc, (i, j, x)| acc.plus(&m.get(*i, *j).times(x)))
}

/// `v` as the `n₁ × n₂` coefficient matrix of `Σ v_{ab} e_a ⊗ e_b`.
fn reshape<F: Field>(v: &[F], n1: usize, n2: usize) -> Matrix<F> {
    Matrix::from_vec(n1, n2, v.to_vec())
}

/// Counts from checking a candidate `Q̄₀` witness against every generator (pair).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub pairs: usize,
    /// Generators with `⟨ψ|A|φ⟩ ≠ 0`.
    pub off_diagonal_failures: usize,
    /// Generators with `⟨φ|A|φ⟩ ≠ ⟨ψ|A|ψ⟩`.
    pub diagonal_failures: usize,
}

impl PairReport {
    pub fn holds(&self) -> bool {
        self.off_diagonal_failures == 0 && self.diagonal_failures == 0
    }
}

/// Both quantities for every generator; tensor subjects are evaluated factor-wise
/// through `⟨ψ|A ⊗ B|φ⟩ = Σ (Ψ†AΦ)_{bd} B_{bd}`.
fn pair_forms<F: Field>(subject: &Subject, phi: &[F], psi: &[F], orthogonality_only: bool) -> PairReport {
    let mut r = PairReport { pairs: 0, off_diagonal_failures: 0, diagonal_failures: 0 };
    match subject {
        Subject::Space { space } => {
            for b in space.basis() {
                let a = Matrix::<F>::from_q(&b);
                r.pairs += 1;
                if !sesq(psi, &a, phi).is_zero() {
                    r.off_diagonal_failures += 1;
                }
                if !orthogonality_only && !sesq(phi, &a, phi).minus(&sesq(psi, &a, psi)).is_zero() {
                    r.diagonal_failures += 1;
                }
            }
        }
        Subject::Tensor { left, right } => {
            let (n1, n2) = (left.ambient(), right.ambient());
            let (fm, sm) = (reshape(phi, n1, n2), reshape(psi, n1, n2));
            let (fa, sa) = (fm.adjoint(), sm.adjoint());
            let rb = sparse_basis::<F>(right);
            for b in left.basis() {
                let a = Matrix::<F>::from_q(&b);
                let (af, as_) = (&a * &fm, &a * &sm);
                let m = &sa * &af;
                let d = if orthogonality_only { None } else { Some(&(&fa * &af) - &(&sa * &as_)) };
                for bb in &rb {
                    r.pairs += 1;
                    if !pair_with(&m, bb).is_zero() {
                        r.off_diagonal_failures += 1;
                    }
                    if let Some(d) = &d {
                        if !pair_with(d, bb).is_zero() {
                            r.diagonal_failures += 1;
                        }
                    }
                }
            }
        }
    }
    r
}

/// Per-generator report for a `Q̄₀` witness candidate.
pub fn qbar0_pair_report(subject: &Subject, phi: &[QScalar], psi: &[QScalar]) -> Result<PairReport, Error> {
    check_vectors(subject, phi, psi)?;
    Ok(pair_forms(subject, phi, psi, false))
}

fn qbar0_pair_report_any(subject: &Subject, w: &VectorPair) -> Result<PairReport, Error> {
    match w {
        VectorPair::Rational { phi, psi } => qbar0_pair_report(subject, phi, psi),
        VectorPair::Quadratic { .. } => {
            let (phi, psi) = w.quad()?;
            check_vectors(subject, &phi, &psi)?;
            Ok(pair_forms(subject, &phi, &psi, false))
        }
    }
}

/// `⟨ψ|A|φ⟩ = 0` and `⟨φ|A|φ⟩ = ⟨ψ|A|ψ⟩` for every `A` in a basis of the graph.
pub fn qbar0_witness_check(subject: &Subject, phi: &[QScalar], psi: &[QScalar]) -> Result<bool, Error> {
    Ok(qbar0_pair_report(subject, phi, psi)?.holds())
}

/// `⟨ψ|A|φ⟩ = 0` for every `A` in the graph: the outputs of `φ` and `ψ` are orthogonal.
pub fn cbar0_witness_check(subject: &Subject, phi: &[QScalar], psi: &[QScalar]) -> Result<bool, Error> {
    check_vectors(subject, phi, psi)?;
    Ok(pair_forms(subject, phi, psi, true).off_diagonal_failures == 0)
}

fn cbar0_witness_check_pair(subject: &Subject, w: &VectorPair) -> Result<bool, Error> {
    match w {
        VectorPair::Rational { phi, psi } => cbar0_witness_check(subject, phi, psi),
        VectorPair::Quadratic { .. } => {
            let (phi, psi) = w.quad()?;
            check_vectors(subject, &phi, &psi)?;
            Ok(pair_forms(subject, &phi, &psi, true).off_diagonal_failures == 0)
        }
    }
}

/// `(φ, ψ)` from a rank-one `x yᵀ` in the perp: `yᵀAx = 0` is `⟨ȳ|A|x⟩ = 0`.
pub fn witness_from_certificate(c: &Certificate) -> Option<VectorPair> {
    let conj = |v: &[QScalar]| v.iter().map(QScalar::conj).collect::<Vec<_>>();
    match &c.evidence {
        Evidence::Witness { x, y } => Some(VectorPair::rational(x.clone(), conj(y))),
        Evidence::TensorFunctional { a, f } => {
            let (x, y) = functional_witness(a, f);
            Some(VectorPair::rational(x, conj(&y)))
        }
        Evidence::QuadWitness { radicand, x, y } => {
            if !radicand.is_real() {
                return None;
            }
            // √d = i·√(−d) for negative d keeps the radicand positive
            let (d, twist) = match radicand.real_sign()? {
                std::cmp::Ordering::Greater => (radicand.clone(), QScalar::one()),
                std::cmp::Ordering::Less => (-radicand, QScalar::i()),
                std::cmp::Ordering::Equal => return None,
            };
            let fix = |p: &QuadPair| QuadPair { a: p.a.clone(), b: &p.b * &twist };
            let phi = x.iter().map(fix).collect();
            let psi = y.iter().map(|p| {
                let q = fix(p);
                QuadPair { a: q.a.conj(), b: q.b.conj() }
            });
            Some(VectorPair::Quadratic { radicand: d, phi, psi: psi.collect() })
        }
        _ => None,
    }
}

/// Registered certificates and witnesses plus search settings.
#[derive(Clone, Debug, Default)]
pub struct ZeroErrorContext {
    pub knowledge: Knowledge,
    pub config: SearchConfig,
    witnesses: Vec<(Subject, VectorPair)>,
}

impl ZeroErrorContext {
    pub fn new(knowledge: Knowledge, config: SearchConfig) -> Self {
        ZeroErrorContext { knowledge, config, witnesses: Vec::new() }
    }

    /// Every fixture certificate and the pair `(φ, ψ)` for `𝔏₁ ⊗ 𝔏₂`.
    pub fn with_fixtures(config: SearchConfig) -> Result<Self, Error> {
        let mut ctx = ZeroErrorContext::new(fixture_knowledge()?, config);
        let t = extreme_vectors();
        let subject = Subject::Tensor { left: l1(), right: l2() };
        ctx.register_qbar0_witness(subject, VectorPair::rational(t.phi, t.psi))?;
        Ok(ctx)
    }

    /// Register a `Q̄₀` witness after checking it exactly.
    pub fn register_qbar0_witness(&mut self, subject: Subject, w: VectorPair) -> Result<(), Error> {
        if !qbar0_pair_report_any(&subject, &w)?.holds() {
            return Err(Error::Certificate("registered pair fails the Q̄₀ equations".into()));
        }
        self.witnesses.push((subject, w));
        Ok(())
    }

    pub fn register_certificate(&mut self, c: Certificate) -> Result<(), Error> {
        self.knowledge.register(c)
    }

    fn registered(&self, subject: &Subject) -> Option<&VectorPair> {
        self.witnesses.iter().find(|(s, _)| s == subject).map(|(_, w)| w)
    }
}

/// Move a pair on `ℂ^{n₁} ⊗ ℂ^{n₂}` into `ℂ^{N₁} ⊗ ℂ^{N₂}`, shifting each factor index by an offset.
pub fn embed_tensor_pair(w: &[QScalar], (n1, off1, big1): (usize, usize, usize), (n2, off2, big2): (usize, usize, usize)) -> Vec<QScalar> {
    let mut out = vec![QScalar::zero(); big1 * big2];
    for a in 0..n1 {
        for b in 0..n2 {
            out[(off1 + a) * big2 + off2 + b] = w[a * n2 + b].clone();
        }
    }
    out
}

/// The `𝔏₁ ⊗ 𝔏₂` pair placed in the first block of the first factor and the second block of the second,
/// a `Q̄₀` witness for `G ⊗ G` with `G = [[𝔏₁, *], [*, 𝔏₂]]`.
pub fn symmetric_extreme_witness() -> VectorPair {
    let t = extreme_vectors();
    let (n1, n2) = (l1().ambient(), l2().ambient());
    let n = n1 + n2;
    let embed = |v: &[QScalar]| embed_tensor_pair(v, (n1, 0, n), (n2, n1, n));
    VectorPair::rational(embed(&t.phi), embed(&t.psi))
}

impl ZeroErrorContext {
    /// Fixtures plus the block certificate of `G = [[𝔏₁, *], [*, 𝔏₂]]` and the embedded pair for `G ⊗ G`.
    /// The pair is checked exactly against all `dim G²` generator pairs on registration.
    pub fn with_symmetric_extreme(config: SearchConfig) -> Result<Self, Error> {
        let mut ctx = ZeroErrorContext::with_fixtures(config)?;
        let c = direct_sum_transitive(l1_transitive()?, l2_transitive()?)?;
        let g = c.subject.space()?.clone();
        ctx.register_certificate(c)?;
        ctx.register_qbar0_witness(Subject::Tensor { left: g.clone(), right: g }, symmetric_extreme_witness())?;
        Ok(ctx)
    }
}

fn transitivity(subject: &Subject, ctx: &ZeroErrorContext) -> Certificate {
    match subject {
        Subject::Space { space } => is_transitive(space, &ctx.knowledge, &ctx.config),
        Subject::Tensor { left, right } => is_transitive_tensor(left, right, &ctx.knowledge, &ctx.config),
    }
}

pub fn cbar0_positive(subject: &Subject, ctx: &ZeroErrorContext) -> Result<PositivityVerdict, Error> {
    check_graph(subject)?;
    let cert = transitivity(subject, ctx);
    let v = match cert.verdict {
        Verdict::Transitive => PositivityVerdict::new(Capacity::Cbar0, Status::Zero, Route::Transitivity),
        Verdict::NotTransitive => {
            let mut v = PositivityVerdict::new(Capacity::Cbar0, Status::Positive, Route::Transitivity);
            match witness_from_certificate(&cert) {
                Some(w) if cbar0_witness_check_pair(subject, &w)? => v = v.with_witness(w),
                Some(_) => return Err(Error::Inconsistent("rank-one witness fails the output-orthogonality check".into())),
                None => v = v.with_note("witness lies over a non-real quadratic extension; see certificate"),
            }
            v
        }
        _ => {
            // the search can miss witnesses over a quadratic extension; invariant subspaces of the graph still give one
            if let Subject::Space { space } = subject {
                if let Some(w) = commutant_cbar0_witness(space) {
                    return Ok(PositivityVerdict::new(Capacity::Cbar0, Status::Positive, Route::Commutant).with_witness(w));
                }
            }
            PositivityVerdict::new(Capacity::Cbar0, Status::Undecided, Route::Exhausted)
        }
    };
    Ok(v.with_certificate(cert))
}

pub fn cbar0_positive_space(g: &Subspace, ctx: &ZeroErrorContext) -> Result<PositivityVerdict, Error> {
    cbar0_positive(&Subject::Space { space: g.clone() }, ctx)
}

fn is_projection(p: &QMatrix) -> bool {
    &(p * p) == p
}

fn first_nonzero_column<F: Field>(m: &Matrix<F>) -> Option<Vec<F>> {
    (0..m.cols()).map(|j| (0..m.rows()).map(|i| m.get(i, j).clone()).collect::<Vec<F>>()).find(|c| c.iter().any(|x| !x.is_zero()))
}

/// Basis of the commutant; for a tensor subject, products of the factor commutants.
pub fn commutant_basis(subject: &Subject) -> Vec<QMatrix> {
    match subject {
        Subject::Space { space } => space.commutant().basis(),
        Subject::Tensor { left, right } => {
            let (a, b) = (left.commutant().basis(), right.commutant().basis());
            a.iter().flat_map(|x| b.iter().map(move |y| x.kron(y))).collect()
        }
    }
}

fn is_commutative(basis: &[QMatrix]) -> bool {
    basis.iter().enumerate().all(|(i, a)| basis[i + 1..].iter().all(|b| &(a * b) == &(b * a)))
}

/// `W` with `W†W`, `WW†` projections and `W†W · WW† = 0`, possibly after an exact rescaling.
fn as_partial_isometry(w: &QMatrix) -> Option<QMatrix> {
    if w.is_zero() {
        return None;
    }
    let p = &w.adjoint() * w;
    // W†W = c·P with P a projection: c is the trace of p² over the trace of p
    let c = (&p * &p).trace().times(&p.trace().recip()?);
    let s = c.sqrt_exact()?;
    let w = w.scale(&s.recip()?);
    let (p, q) = (&w.adjoint() * &w, &w * &w.adjoint());
    (is_projection(&p) && is_projection(&q) && (&p * &q).is_zero()).then_some(w)
}

/// The pair `(φ, Wφ)` for a partial isometry `W` in the commutant, screened
/// among basis elements and their pairwise products.
pub fn commutant_qbar0_witness(subject: &Subject) -> Option<VectorPair> {
    let basis = commutant_basis(subject);
    if basis.len() <= 1 {
        return None;
    }
    let mut candidates = basis.clone();
    if basis.len() <= 16 {
        for a in &basis {
            for b in &basis {
                candidates.push(a * b);
            }
        }
    }
    for c in &candidates {
        if let Some(w) = as_partial_isometry(c) {
            let p = &w.adjoint() * &w;
            let phi = first_nonzero_column(&p)?;
            let psi = (&w * &QMatrix::column(&phi)).data().to_vec();
            let pair = VectorPair::rational(phi, psi);
            if qbar0_pair_report_any(subject, &pair).is_ok_and(|r| r.holds()) {
                return Some(pair);
            }
        }
    }
    None
}

fn hermitian_parts(basis: &[QMatrix]) -> Vec<QMatrix> {
    let i = QScalar::i();
    basis
        .iter()
        .flat_map(|x| {
            let xa = x.adjoint();
            [x + &xa, (x - &xa).scale(&i)]
        })
        .collect()
}

fn is_scalar(h: &QMatrix) -> bool {
    let n = h.rows();
    h == &QMatrix::identity(n).scale(h.get(0, 0))
}

/// `C̄₀` witness from an invariant subspace of the graph: `φ` in an eigenspace of a
/// Hermitian `H` in the commutant, `ψ` in the range of `H − λ`. Eigenvalues are
/// recovered exactly when they are rational or quadratic.
pub fn commutant_cbar0_witness(g: &Subspace) -> Option<VectorPair> {
    let n = g.ambient();
    let subject = Subject::Space { space: g.clone() };
    let comm = g.commutant().basis();
    if comm.len() <= 1 {
        return None;
    }
    for h in hermitian_parts(&comm).iter().filter(|h| !h.is_zero() && !is_scalar(h)) {
        let eig = to_float(h).symmetric_eigen();
        let vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
        for &v in &vals {
            let Some(r) = rationalize_f64(v, 1_000_000) else { continue };
            let shifted = h - &QMatrix::identity(n).scale(&QScalar::from_rational(r));
            let Some(phi) = kernel(&shifted).first().map(|k| k.data().to_vec()) else { continue };
            let Some(psi) = first_nonzero_column(&shifted) else { continue };
            let pair = VectorPair::rational(phi, psi);
            if cbar0_witness_check_pair(&subject, &pair).unwrap_or(false) {
                return Some(pair);
            }
        }
        for (i, &a) in vals.iter().enumerate() {
            for &b in &vals[i + 1..] {
                if let Some(pair) = quadratic_eigen_pair(h, a, b) {
                    if cbar0_witness_check_pair(&subject, &pair).unwrap_or(false) {
                        return Some(pair);
                    }
                }
            }
        }
    }
    None
}

/// Eigenvalue `(s + √d)/2` of `H` when `a, b` are the two roots of a rational quadratic.
fn quadratic_eigen_pair(h: &QMatrix, a: f64, b: f64) -> Option<VectorPair> {
    let s = QScalar::from_rational(rationalize_f64(a + b, 1_000_000)?);
    let p = QScalar::from_rational(rationalize_f64(a * b, 1_000_000)?);
    let d = &(&s * &s) - &(&p * &QScalar::from_int(4));
    if d.real_sign() != Some(std::cmp::Ordering::Greater) || d.sqrt_exact().is_some() {
        return None;
    }
    let n = h.rows();
    let half = QuadScalar::from_q(&QScalar::frac(1, 2));
    let lambda = QuadScalar::from_q(&s).plus(&QuadScalar::root(d.clone())).times(&half);
    let hq = Matrix::<QuadScalar>::from_q(h);
    let shifted = &hq - &Matrix::<QuadScalar>::identity(n).scale(&lambda);
    let phi = kernel(&shifted).first()?.data().to_vec();
    let psi = first_nonzero_column(&shifted)?;
    let pack = |v: &[QuadScalar]| v.iter().map(QuadPair::from_quad).collect();
    Some(VectorPair::Quadratic { radicand: d, phi: pack(&phi), psi: pack(&psi) })
}

fn unit(n: usize, k: usize) -> Vec<QScalar> {
    let mut v = vec![QScalar::zero(); n];
    v[k] = QScalar::one();
    v
}

fn coordinate_pair(subject: &Subject) -> Option<VectorPair> {
    let n = subject.ambient();
    for k in 0..n {
        for l in k + 1..n {
            let (phi, psi) = (unit(n, k), unit(n, l));
            if qbar0_witness_check(subject, &phi, &psi).unwrap_or(false) {
                return Some(VectorPair::rational(phi, psi));
            }
        }
    }
    None
}

/// Strategy chain: registered witnesses, commutant partial isometries, coordinate
/// pairs, structural zero arguments, then float search with exact rounding.
/// `ZERO` only ever comes from a structural argument.
pub fn qbar0_positive(subject: &Subject, ctx: &ZeroErrorContext) -> Result<PositivityVerdict, Error> {
    check_graph(subject)?;
    let positive = |route, w| PositivityVerdict::new(Capacity::Qbar0, Status::Positive, route).with_witness(w);
    let zero = |route| PositivityVerdict::new(Capacity::Qbar0, Status::Zero, route);
    if let Some(w) = ctx.registered(subject) {
        return Ok(positive(Route::RegisteredWitness, w.clone()));
    }
    if let Some(w) = commutant_qbar0_witness(subject) {
        return Ok(positive(Route::Commutant, w));
    }
    let n = subject.ambient();
    if n <= SEARCH_LIMIT {
        if let Some(w) = coordinate_pair(subject) {
            return Ok(positive(Route::CoordinatePair, w));
        }
    }
    if let Subject::Space { space } = subject {
        if n == 2 && space.dim() > 1 {
            return Ok(zero(Route::QubitGraph));
        }
    }
    if factors(subject).iter().all(|g| g.is_algebra() && is_commutative(&g.commutant().basis())) {
        return Ok(zero(Route::AlgebraCommutant));
    }
    let c = cbar0_positive(subject, ctx)?;
    if c.is_zero() {
        let cert = c.certificate.expect("zero verdicts carry certificates");
        return Ok(zero(Route::ClassicalZero).with_certificate(cert));
    }
    if n <= SEARCH_LIMIT {
        let cand = search::qbar0_search(subject, &ctx.config);
        if let Some((phi, psi)) = search::rationalize_qbar0(&cand, ctx.config.max_denominator) {
            if qbar0_witness_check(subject, &phi, &psi).unwrap_or(false) {
                return Ok(positive(Route::Heuristic, VectorPair::rational(phi, psi)));
            }
        }
        return Ok(PositivityVerdict::new(Capacity::Qbar0, Status::Undecided, Route::Exhausted).with_note(format!(
            "no witness: commutant screening, coordinate pairs and float search (residual {:.3e}) failed",
            cand.residual
        )));
    }
    Ok(PositivityVerdict::new(Capacity::Qbar0, Status::Undecided, Route::Exhausted)
        .with_note("no registered witness or commutant partial isometry; ambient too large for search"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Implication {
    pub premise: String,
    pub conclusion: String,
    pub premise_holds: bool,
    /// The converse also holds because the graph is an algebra.
    pub equivalence: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutantAnalysis {
    pub dim: usize,
    pub trivial: bool,
    pub commutative: bool,
    pub graph_is_algebra: bool,
    pub implications: Vec<Implication>,
}

pub fn commutant_analysis(g: &Subspace) -> CommutantAnalysis {
    let basis = g.commutant().basis();
    let dim = basis.len();
    let trivial = dim == 1;
    let commutative = is_commutative(&basis);
    let graph_is_algebra = g.is_algebra();
    let implications = vec![
        Implication {
            premise: "commutant is non-trivial".into(),
            conclusion: "C̄₀ > 0".into(),
            premise_holds: !trivial,
            equivalence: graph_is_algebra,
        },
        Implication {
            premise: "commutant is noncommutative".into(),
            conclusion: "Q̄₀ > 0".into(),
            premise_holds: !commutative,
            equivalence: graph_is_algebra,
        },
    ];
    CommutantAnalysis { dim, trivial, commutative, graph_is_algebra, implications }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixtures::{l_theorem1, remark1_subspace};

    fn space(g: Subspace) -> Subject {
        Subject::Space { space: g }
    }

    fn diagonal(n: usize) -> Subspace {
        let d: Vec<QMatrix> = (0..n).map(|i| QMatrix::matrix_unit(n, i, i)).collect();
        Subspace::span(n, &d).unwrap()
    }

    fn ctx() -> ZeroErrorContext {
        ZeroErrorContext::default()
    }

    #[test]
    fn cbar0_examples() {
        let v = cbar0_positive(&space(Subspace::full(3)), &ctx()).unwrap();
        assert_eq!(v.status, Status::Zero);
        let lt = space(l_theorem1());
        let v = cbar0_positive(&lt, &ZeroErrorContext::with_fixtures(SearchConfig::default()).unwrap()).unwrap();
        assert_eq!(v.status, Status::Zero);
        v.verify(&lt).unwrap();
        let d = space(diagonal(2));
        let v = cbar0_positive(&d, &ctx()).unwrap();
        assert_eq!(v.status, Status::Positive);
        v.verify(&d).unwrap();
        let q = |a| QScalar::from_int(a);
        assert!(cbar0_witness_check(&d, &[q(1), q(0)], &[q(0), q(1)]).unwrap());
    }

    #[test]
    fn graph_preconditions_enforced() {
        let upper = Subspace::span(2, &[QMatrix::identity(2), QMatrix::matrix_unit(2, 0, 1)]).unwrap();
        assert!(cbar0_positive(&space(upper), &ctx()).is_err());
        let no_identity = Subspace::span(2, &[QMatrix::matrix_unit(2, 0, 0)]).unwrap();
        assert!(qbar0_positive(&space(no_identity), &ctx()).is_err());
    }

    #[test]
    fn qbar0_witness_examples() {
        let t = extreme_vectors();
        let s = Subject::Tensor { left: l1(), right: l2() };
        let r = qbar0_pair_report(&s, &t.phi, &t.psi).unwrap();
        assert_eq!(r, PairReport { pairs: 529, off_diagonal_failures: 0, diagonal_failures: 0 });
        let e = |k| unit(4, k);
        assert!(!qbar0_witness_check(&space(Subspace::full(4)), &e(0), &e(1)).unwrap());
        assert!(qbar0_witness_check(&space(remark1_subspace()), &e(0), &e(1)).unwrap());
        assert!(qbar0_witness_check(&space(Subspace::full(4)), &e(0), &vec![QScalar::zero(); 4]).is_err());
    }

    #[test]
    fn tensor_fast_path_matches_explicit() {
        let t = extreme_vectors();
        let explicit = space(l_theorem1().tensor(&l_theorem1()));
        let factored = Subject::Tensor { left: l_theorem1(), right: l_theorem1() };
        for (phi, psi) in [(&t.u, &t.v), (&t.phi[..16].to_vec(), &t.psi[..16].to_vec())] {
            if phi.iter().all(QScalar::is_zero) || psi.iter().all(QScalar::is_zero) {
                continue;
            }
            let a = qbar0_pair_report(&explicit, phi, psi).unwrap();
            let b = qbar0_pair_report(&factored, phi, psi).unwrap();
            assert_eq!(a.holds(), b.holds());
            assert_eq!(cbar0_witness_check(&explicit, phi, psi).unwrap(), cbar0_witness_check(&factored, phi, psi).unwrap());
        }
    }

    #[test]
    fn qbar0_examples() {
        let r1 = space(remark1_subspace());
        let v = qbar0_positive(&r1, &ctx()).unwrap();
        assert_eq!(v.status, Status::Positive);
        v.verify(&r1).unwrap();
        assert!(commutant_analysis(&remark1_subspace()).trivial);

        let full = space(Subspace::full(3));
        let v = qbar0_positive(&full, &ctx()).unwrap();
        assert_eq!(v.status, Status::Zero);
        v.verify(&full).unwrap();

        // commutant of I₂ ⊗ M₂ contains E₂₁ ⊗ I₂
        let g = Subspace::scalars(2).tensor(&Subspace::full(2));
        let s = space(g);
        let v = qbar0_positive(&s, &ctx()).unwrap();
        assert_eq!((v.status, v.route), (Status::Positive, Route::Commutant));
        v.verify(&s).unwrap();
    }

    #[test]
    fn structural_zeros() {
        let d = space(diagonal(2));
        let v = qbar0_positive(&d, &ctx()).unwrap();
        assert_eq!((v.status, v.route), (Status::Zero, Route::QubitGraph));
        let d3 = space(diagonal(3));
        let v = qbar0_positive(&d3, &ctx()).unwrap();
        assert_eq!((v.status, v.route), (Status::Zero, Route::AlgebraCommutant));
        v.verify(&d3).unwrap();
        let lt = space(l_theorem1());
        let v = qbar0_positive(&lt, &ZeroErrorContext::with_fixtures(SearchConfig::default()).unwrap()).unwrap();
        assert_eq!((v.status, v.route), (Status::Zero, Route::ClassicalZero));
    }

    #[test]
    fn commutant_examples() {
        let a = commutant_analysis(&l_theorem1());
        assert!(a.trivial && !a.implications[0].premise_holds);
        let d = commutant_analysis(&diagonal(3));
        assert!(!d.trivial && d.commutative && d.graph_is_algebra);
        assert!(d.implications.iter().all(|i| i.equivalence));
        assert!(d.implications[0].premise_holds && !d.implications[1].premise_holds);
    }

    #[test]
    fn invariant_subspace_witness_with_irrational_eigenvalues() {
        // graph = commutant of H = [[1, 1], [1, −1]] ⊕ 1, eigenvalues ±√2 and 1
        let h = QMatrix::from_ints(&[&[1, 1, 0], &[1, -1, 0], &[0, 0, 1]]);
        let g = Subspace::span(3, &[h]).unwrap().commutant();
        let w = commutant_cbar0_witness(&g).unwrap();
        assert!(cbar0_witness_check_pair(&space(g), &w).unwrap());
    }

    #[test]
    fn quadratic_commutant_witness() {
        let h = QMatrix::from_ints(&[&[1, 1], &[1, -1]]);
        let g = Subspace::span(2, &[QMatrix::identity(2), h]).unwrap();
        let w = commutant_cbar0_witness(&g).unwrap();
        assert!(matches!(w, VectorPair::Quadratic { .. }));
        assert!(cbar0_witness_check_pair(&space(g), &w).unwrap());
    }

    #[test]
    fn symmetric_extreme_pair() {
        let ctx = ZeroErrorContext::with_symmetric_extreme(SearchConfig::default()).unwrap();
        let g = Subspace::direct_sum_graph(&l1(), &l2());
        assert_eq!(g.dim(), 174);
        let t = Subject::Tensor { left: g.clone(), right: g.clone() };
        let r = qbar0_pair_report_any(&t, &symmetric_extreme_witness()).unwrap();
        assert_eq!((r.pairs, r.holds()), (174 * 174, true));
        assert!(cbar0_positive_space(&g, &ctx).unwrap().is_zero());
        assert!(qbar0_positive(&t, &ctx).unwrap().is_positive());
    }
}
