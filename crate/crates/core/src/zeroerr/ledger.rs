//! Exact predicates under which zero-error capacities cannot be superactivated.
//!
//! Classical (`C̄₀`) clauses 3A–3F need only one of the two channels; quantum
//! (`Q̄₀`) clauses 4A and 4B need one, 4C and 4D need both.

use serde::Serialize;

use crate::channel::KrausChannel;
use crate::constructions::synthesis::PseudoDiagonalSpec;
use crate::exact::{rank, QMatrix};
use crate::gaussian::GaussianSpec;
use crate::subspace::Subspace;
use crate::zeroerr::Capacity;

/// Anything whose noncommutative graph is exactly available.
pub trait ChannelGraph {
    fn graph(&self) -> Subspace;
    fn input_dim(&self) -> usize;
    /// Exact ranks of the operators of the Kraus family at hand.
    fn kraus_ranks(&self) -> Option<Vec<usize>>;
    /// Exact Choi matrix, when one can be formed without square roots.
    fn choi(&self) -> Option<QMatrix> {
        None
    }
}

impl ChannelGraph for KrausChannel {
    fn graph(&self) -> Subspace {
        KrausChannel::graph(self)
    }
    fn input_dim(&self) -> usize {
        self.dim_in()
    }
    fn kraus_ranks(&self) -> Option<Vec<usize>> {
        Some(self.kraus().iter().map(rank).collect())
    }
    fn choi(&self) -> Option<QMatrix> {
        Some(self.choi_matrix())
    }
}

impl ChannelGraph for PseudoDiagonalSpec {
    fn graph(&self) -> Subspace {
        PseudoDiagonalSpec::graph(self)
    }
    fn input_dim(&self) -> usize {
        self.n
    }
    fn kraus_ranks(&self) -> Option<Vec<usize>> {
        Some(PseudoDiagonalSpec::kraus_ranks(self))
    }
}

impl ChannelGraph for Subspace {
    fn graph(&self) -> Subspace {
        self.clone()
    }
    fn input_dim(&self) -> usize {
        self.ambient()
    }
    fn kraus_ranks(&self) -> Option<Vec<usize>> {
        None
    }
}

/// Caller-supplied certificates that some clauses accept.
#[derive(Clone, Debug, Default)]
pub struct LedgerHints {
    /// A Kraus family of the same channel with every operator of rank one.
    pub rank_one_kraus: Option<Vec<QMatrix>>,
    /// Unitaries whose columns form a basis in which the diagonal algebra should lie in the graph.
    pub masa_bases: Vec<QMatrix>,
}

pub enum LedgerChannel<'a> {
    Finite { channel: &'a dyn ChannelGraph, hints: LedgerHints },
    Gaussian(&'a GaussianSpec),
}

impl<'a> LedgerChannel<'a> {
    pub fn finite(channel: &'a dyn ChannelGraph) -> Self {
        LedgerChannel::Finite { channel, hints: LedgerHints::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    First,
    Second,
    Both,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiredClause {
    pub id: &'static str,
    pub capacity: Capacity,
    pub channel: Which,
    pub condition: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonSuperactivationLedger {
    pub clauses: Vec<FiredClause>,
    /// `C̄₀` of the product is zero whenever both factors have `C̄₀ = 0`.
    pub classical_blocked: bool,
    /// Same for `Q̄₀`.
    pub quantum_blocked: bool,
    pub corollaries: Vec<String>,
}

impl NonSuperactivationLedger {
    pub fn fired(&self, id: &str) -> bool {
        self.clauses.iter().any(|c| c.id == id)
    }
}

/// `U e_kk U† ∈ G` for every `k`, with `U` exactly unitary.
pub fn contains_masa(g: &Subspace, u: &QMatrix) -> bool {
    let n = g.ambient();
    if u.rows() != n || u.cols() != n || &u.adjoint() * u != QMatrix::identity(n) {
        return false;
    }
    (0..n).all(|k| g.contains(&(&(u * &QMatrix::matrix_unit(n, k, k)) * &u.adjoint())))
}

fn rank_one_family_matches(channel: &dyn ChannelGraph, family: &[QMatrix]) -> Result<String, String> {
    let k = KrausChannel::new(family.to_vec()).map_err(|e| e.to_string())?;
    if k.kraus().iter().any(|v| rank(v) != 1) {
        return Err("supplied family has an operator of rank ≠ 1".into());
    }
    let choi = channel.choi().ok_or("channel has no exact Choi matrix to compare against")?;
    if choi != k.choi_matrix() {
        return Err("supplied family realizes a different channel".into());
    }
    Ok(format!("{} rank-one Kraus operators represent the channel", family.len()))
}

fn clause(id: &'static str, capacity: Capacity, channel: Which, condition: &'static str, detail: String) -> FiredClause {
    FiredClause { id, capacity, channel, condition, detail }
}

struct Single {
    clauses: Vec<FiredClause>,
    algebra: bool,
    gaussian: bool,
}

fn single(ch: &LedgerChannel<'_>, which: Which, known: Option<&Subspace>) -> Single {
    let mut out = Vec::new();
    match ch {
        LedgerChannel::Gaussian(_) => {
            let detail = "the graph of a Bosonic Gaussian channel is an algebra".to_string();
            out.push(clause("3D", Capacity::Cbar0, which, "is a Bosonic Gaussian channel", detail));
            Single { clauses: out, algebra: true, gaussian: true }
        }
        LedgerChannel::Finite { channel, hints } => {
            let g = known.cloned().unwrap_or_else(|| channel.graph());
            let n = channel.input_dim();
            let algebra = g.is_algebra();
            if g.dim() + 1 >= n * n {
                let d = format!("dim G = {} ≥ n² − 1 = {}", g.dim(), n * n - 1);
                out.push(clause("3A", Capacity::Cbar0, which, "the subspace ker Φ̂₁ is reflexive", d));
            }
            if n == 2 {
                out.push(clause("3B", Capacity::Cbar0, which, "is a qubit channel", "input dimension 2".into()));
            }
            if algebra {
                out.push(clause("3C", Capacity::Cbar0, which, "is an algebra", format!("G closed under products, dim {}", g.dim())));
            }
            if let Some(fam) = &hints.rank_one_kraus {
                if let Ok(d) = rank_one_family_matches(*channel, fam) {
                    out.push(clause("3E", Capacity::Cbar0, which, "finite-dimensional entanglement-breaking channel", d));
                }
            }
            if let Some(r) = channel.kraus_ranks() {
                if !r.is_empty() && r.iter().all(|&k| k == 1) {
                    let d = format!("{} Kraus operators, all of rank 1", r.len());
                    out.push(clause("3F", Capacity::Cbar0, which, "rank V_k = 1 for all k", d));
                }
            }
            let bases = std::iter::once(QMatrix::identity(n)).chain(hints.masa_bases.iter().cloned());
            if let Some((idx, _)) = bases.enumerate().find(|(_, u)| contains_masa(&g, u)) {
                let d = if idx == 0 { "diagonal matrices lie in G".to_string() } else { format!("supplied basis #{idx}") };
                out.push(clause("4A", Capacity::Qbar0, which, "maximal commutative *-subalgebra", d));
            }
            if n == 2 {
                out.push(clause("4B", Capacity::Qbar0, which, "is a qubit channel", "input dimension 2".into()));
            }
            Single { clauses: out, algebra, gaussian: false }
        }
    }
}

/// Fired clauses for one channel, or for a pair.
pub fn nonsuperactivation_ledger(first: &LedgerChannel<'_>, second: Option<&LedgerChannel<'_>>) -> NonSuperactivationLedger {
    ledger_with_graphs(first, second, [None, None])
}

/// As [`nonsuperactivation_ledger`], reusing graphs the caller already has.
pub(crate) fn ledger_with_graphs(
    first: &LedgerChannel<'_>,
    second: Option<&LedgerChannel<'_>>,
    graphs: [Option<&Subspace>; 2],
) -> NonSuperactivationLedger {
    let a = single(first, Which::First, graphs[0]);
    let mut clauses = a.clauses;
    let mut pair_quantum = false;
    if let Some(second) = second {
        let b = single(second, Which::Second, graphs[1]);
        clauses.extend(b.clauses);
        if a.gaussian && b.gaussian {
            pair_quantum = true;
            clauses.push(clause("4D", Capacity::Qbar0, Which::Both, "are Bosonic Gaussian channels", "both channels Gaussian".into()));
        } else if a.algebra && b.algebra {
            pair_quantum = true;
            clauses.push(clause("4C", Capacity::Qbar0, Which::Both, "are algebras", "both graphs are algebras".into()));
        }
    } else if a.algebra {
        // the graph of every tensor power is again an algebra
        pair_quantum = true;
    }
    let classical_blocked = clauses.iter().any(|c| c.capacity == Capacity::Cbar0);
    let quantum_blocked = pair_quantum || clauses.iter().any(|c| c.id == "4A" || c.id == "4B");
    let mut corollaries = Vec::new();
    let on_first = |cap: Capacity| clauses.iter().any(|c| c.capacity == cap && c.channel == Which::First);
    if on_first(Capacity::Cbar0) {
        corollaries.push("C₀(Φ) = 0 if and only if C̄₀(Φ) = 0".to_string());
    }
    if on_first(Capacity::Qbar0) || a.algebra {
        corollaries.push("Q₀(Φ) = 0 if and only if Q̄₀(Φ) = 0".to_string());
    }
    NonSuperactivationLedger { clauses, classical_blocked, quantum_blocked, corollaries }
}
