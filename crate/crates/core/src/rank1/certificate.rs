//! Re-checkable verdicts about rank-one elements and transitivity.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::exact::{QMatrix, QScalar, QuadScalar};
use crate::rank1::{corner, dmr, groebner, n2, staircase, tensor};
use crate::rank1::{rank_one_in_perp, verify_rank_one_in};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    RankOneFound,
    NoRankOne,
    Transitive,
    NotTransitive,
    Undecided,
}

impl Verdict {
    pub fn is_decided(self) -> bool {
        self != Verdict::Undecided
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::RankOneFound => "RANK_ONE_FOUND",
            Verdict::NoRankOne => "NO_RANK_ONE",
            Verdict::Transitive => "TRANSITIVE",
            Verdict::NotTransitive => "NOT_TRANSITIVE",
            Verdict::Undecided => "UNDECIDED",
        }
    }
}

/// What a certificate talks about: a subspace, or the tensor product of two
/// subspaces kept in factored form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Subject {
    Space { space: Subspace },
    Tensor { left: Subspace, right: Subspace },
}

impl Subject {
    pub fn ambient(&self) -> usize {
        match self {
            Subject::Space { space } => space.ambient(),
            Subject::Tensor { left, right } => left.ambient() * right.ambient(),
        }
    }

    pub fn space(&self) -> Result<&Subspace, Error> {
        match self {
            Subject::Space { space } => Ok(space),
            Subject::Tensor { .. } => Err(Error::Certificate("expected a plain subspace subject".into())),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Subject::Space { space } => space.dim(),
            Subject::Tensor { left, right } => left.dim() * right.dim(),
        }
    }
}

/// `a + b√d` with the radicand stored alongside the evidence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadPair {
    pub a: QScalar,
    pub b: QScalar,
}

impl QuadPair {
    pub fn from_quad(x: &QuadScalar) -> Self {
        QuadPair { a: x.rational_part().clone(), b: x.radical_part().clone() }
    }

    pub fn to_quad(&self, radicand: &QScalar) -> Result<QuadScalar, Error> {
        if self.b.is_zero() {
            return Ok(<QuadScalar as crate::exact::Field>::from_q(&self.a));
        }
        if radicand.sqrt_exact().is_some() {
            return Err(Error::Certificate(format!("radicand {radicand} is a square")));
        }
        Ok(QuadScalar::new(self.a.clone(), self.b.clone(), radicand.clone()))
    }
}

/// Which diagonal block of a corner pattern is the source `A` and which is `D(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CornerShape {
    /// `[[A, B], [C, D(A)]]`
    SourceTopLeft,
    /// `[[D(A), B], [C, A]]`
    SourceBottomRight,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    /// The subject is all of `M_n` (transitive) or zero (no rank-one).
    TrivialPerp,
    /// `x yᵀ` lies in the target.
    Witness { x: Vec<QScalar>, y: Vec<QScalar> },
    /// `x yᵀ` with entries in `ℚ(i)(√radicand)`.
    QuadWitness { radicand: QScalar, x: Vec<QuadPair>, y: Vec<QuadPair> },
    /// Target in `M₂` of dimension ≤ 1 with nonsingular generator.
    SmallAmbient,
    /// Outermost-diagonal argument on an automatically split parametrization.
    Staircase { diagonals: Vec<staircase::DiagonalBlock> },
    /// `{[[A, Φ(B)], [B, A]]}` with `Φ` given by eigenbasis and eigenvalues.
    Dmr { radicand: QScalar, eigenbasis: Vec<Vec<QuadPair>>, eigenvalues: Vec<QuadPair> },
    Corner {
        shape: CornerShape,
        multiplier: QMatrix,
        source: Box<Certificate>,
        image: Box<Certificate>,
        upper: Box<Certificate>,
        lower: Box<Certificate>,
    },
    /// Subject `= P · inner · Q` with `P`, `Q` invertible.
    Equivalence { left: QMatrix, right: QMatrix, inner: Box<Certificate> },
    /// Subject `= inner*`.
    Adjoint { inner: Box<Certificate> },
    /// Subject is `[[G₁, *], [*, G₂]]` with both diagonal families transitive.
    DirectSumBlock { first: Box<Certificate>, second: Box<Certificate> },
    /// `Tr(F X A Yᵀ) = 0` for every basis pair of a tensor subject.
    TensorFunctional { a: QMatrix, f: QMatrix },
    /// Pure powers `x_var^degree` in the ideal of maximal minors.
    MinorIdeal { pure_powers: Vec<(usize, usize)> },
    /// Record of a search that found nothing exact.
    Search { seed: u64, iterations: u64, residual: f64, note: String },
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::TrivialPerp => "trivial_perp",
            Evidence::Witness { .. } => "witness",
            Evidence::QuadWitness { .. } => "quad_witness",
            Evidence::SmallAmbient => "small_ambient",
            Evidence::Staircase { .. } => "staircase",
            Evidence::Dmr { .. } => "dmr",
            Evidence::Corner { .. } => "corner",
            Evidence::Equivalence { .. } => "equivalence",
            Evidence::Adjoint { .. } => "adjoint",
            Evidence::DirectSumBlock { .. } => "direct_sum_block",
            Evidence::TensorFunctional { .. } => "tensor_functional",
            Evidence::MinorIdeal { .. } => "minor_ideal",
            Evidence::Search { .. } => "search",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub subject: Subject,
    pub verdict: Verdict,
    pub strategy: String,
    pub evidence: Evidence,
    pub budget_used: u64,
    pub digest: String,
}

#[derive(Serialize)]
struct Body<'a> {
    subject: &'a Subject,
    verdict: Verdict,
    strategy: &'a str,
    evidence: &'a Evidence,
    budget_used: u64,
}

impl Certificate {
    pub fn new(subject: Subject, verdict: Verdict, strategy: &str, evidence: Evidence, budget_used: u64) -> Self {
        let mut c = Certificate {
            subject,
            verdict,
            strategy: strategy.to_string(),
            evidence,
            budget_used,
            digest: String::new(),
        };
        c.digest = c.compute_digest();
        c
    }

    pub fn space(space: &Subspace, verdict: Verdict, strategy: &str, evidence: Evidence) -> Self {
        Certificate::new(Subject::Space { space: space.clone() }, verdict, strategy, evidence, 0)
    }

    pub fn undecided(subject: Subject, strategy: &str, evidence: Evidence, budget_used: u64) -> Self {
        Certificate::new(subject, Verdict::Undecided, strategy, evidence, budget_used)
    }

    pub fn compute_digest(&self) -> String {
        let body = Body {
            subject: &self.subject,
            verdict: self.verdict,
            strategy: &self.strategy,
            evidence: &self.evidence,
            budget_used: self.budget_used,
        };
        let json = serde_json::to_string(&body).expect("certificate body serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    /// Digest check followed by exact re-verification of the evidence.
    pub fn verify(&self) -> Result<(), Error> {
        if self.digest != self.compute_digest() {
            return Err(Error::Certificate("digest does not match certificate body".into()));
        }
        self.check()
    }

    /// Exact re-verification of the evidence alone.
    pub fn check(&self) -> Result<(), Error> {
        use Evidence as E;
        use Verdict as V;
        let fail = |msg: &str| Err(Error::Certificate(format!("{} ({}): {msg}", self.verdict.name(), self.evidence.kind())));
        match (&self.evidence, self.verdict) {
            (E::Search { .. }, V::Undecided) => Ok(()),
            (_, V::Undecided) => fail("undecided certificates carry only search records"),
            (E::Search { .. }, _) => fail("a search record cannot support a verdict"),
            (E::TrivialPerp, V::Transitive) => {
                let n = self.subject.ambient();
                if self.subject.dim() == n * n {
                    Ok(())
                } else {
                    fail("subject is not the full matrix space")
                }
            }
            (E::TrivialPerp, V::NoRankOne) => {
                if self.subject.dim() == 0 {
                    Ok(())
                } else {
                    fail("subject is not zero")
                }
            }
            (E::Witness { x, y }, V::RankOneFound) => {
                if verify_rank_one_in(self.subject.space()?, x, y)? {
                    Ok(())
                } else {
                    fail("x yᵀ is not in the subject")
                }
            }
            (E::Witness { x, y }, V::NotTransitive) => {
                let ok = match &self.subject {
                    Subject::Space { space } => rank_one_in_perp(space, x, y)?,
                    Subject::Tensor { left, right } => tensor::tensor_perp_contains(left, right, x, y)?,
                };
                if ok {
                    Ok(())
                } else {
                    fail("x yᵀ is not in the perp of the subject")
                }
            }
            (E::QuadWitness { radicand, x, y }, V::RankOneFound | V::NotTransitive) => {
                let target = self.target()?;
                n2::check_quad_witness(&target, radicand, x, y)
            }
            (E::SmallAmbient, V::NoRankOne | V::Transitive) => n2::check_small_ambient(&self.target()?),
            (E::Staircase { diagonals }, V::NoRankOne | V::Transitive) => {
                staircase::check(&self.target()?, diagonals)
            }
            (E::MinorIdeal { pure_powers }, V::NoRankOne | V::Transitive) => {
                groebner::check_pure_powers(&self.target()?, pure_powers)
            }
            (E::Dmr { radicand, eigenbasis, eigenvalues }, V::Transitive) => {
                dmr::check(self.subject.space()?, radicand, eigenbasis, eigenvalues)
            }
            (E::Corner { shape, multiplier, source, image, upper, lower }, V::Transitive) => {
                corner::check(self.subject.space()?, *shape, multiplier, source, image, upper, lower)
            }
            (E::Equivalence { left, right, inner }, V::Transitive) => {
                inner.verify_transitive()?;
                let inv_ok = crate::exact::inverse(left).is_some() && crate::exact::inverse(right).is_some();
                if !inv_ok {
                    return fail("equivalence factors are not invertible");
                }
                let image = inner.subject.space()?.sandwich(left, right);
                if &image == self.subject.space()? {
                    Ok(())
                } else {
                    fail("subject differs from P·inner·Q")
                }
            }
            (E::Adjoint { inner }, V::Transitive) => {
                inner.verify_transitive()?;
                if &inner.subject.space()?.adjoint() == self.subject.space()? {
                    Ok(())
                } else {
                    fail("subject differs from the adjoint of the inner subject")
                }
            }
            (E::DirectSumBlock { first, second }, V::Transitive) => {
                first.verify_transitive()?;
                second.verify_transitive()?;
                let g = Subspace::direct_sum_graph(first.subject.space()?, second.subject.space()?);
                if &g == self.subject.space()? {
                    Ok(())
                } else {
                    fail("subject is not the block direct sum of the inner subjects")
                }
            }
            (E::TensorFunctional { a, f }, V::NotTransitive) => match &self.subject {
                Subject::Tensor { left, right } => tensor::check_functional(left, right, a, f),
                Subject::Space { .. } => fail("functional evidence needs a tensor subject"),
            },
            _ => fail("evidence does not support this verdict"),
        }
    }

    fn verify_transitive(&self) -> Result<(), Error> {
        if self.verdict != Verdict::Transitive {
            return Err(Error::Certificate(format!(
                "inner certificate has verdict {}, expected TRANSITIVE",
                self.verdict.name()
            )));
        }
        self.verify()
    }

    /// The subspace whose rank-one elements the evidence speaks about.
    fn target(&self) -> Result<Subspace, Error> {
        let s = self.subject.space()?;
        Ok(match self.verdict {
            Verdict::Transitive | Verdict::NotTransitive => s.perp(),
            _ => s.clone(),
        })
    }

    /// The witness `(x, y)` with `x yᵀ` in the target, if the evidence is an exact ℚ(i) pair.
    pub fn witness(&self) -> Option<(&[QScalar], &[QScalar])> {
        match &self.evidence {
            Evidence::Witness { x, y } => Some((x, y)),
            _ => None,
        }
    }

    /// Recompute the digests of this certificate and every nested one.
    pub fn reseal(&mut self) {
        match &mut self.evidence {
            Evidence::Corner { source, image, upper, lower, .. } => {
                for c in [source, image, upper, lower] {
                    c.reseal();
                }
            }
            Evidence::Equivalence { inner, .. } | Evidence::Adjoint { inner } => inner.reseal(),
            Evidence::DirectSumBlock { first, second } => {
                first.reseal();
                second.reseal();
            }
            _ => {}
        }
        self.digest = self.compute_digest();
    }
}
