//! Symbolic nests on `c00(N)` described by support sets.
//!
//! A subspace `{f : supp f ⊆ S}` is stored as the support set `S`. The same
//! descriptor is used in the primal space `c00` and in its algebraic dual, the
//! space of all sequences, where the annihilator of `S` is its complement.
//! The two spaces differ only in increasing unions: `⋃ {1..n}` is everything
//! in `c00` but only the finitely supported sequences in the dual.
//!
//! Nests here come from a closed catalog. Each member is addressed by a
//! [`Label`] and is a tuple of support sets, one per direct summand.
//!
//! The module also has the level-`m` truncations of the dual of the `ω` nest,
//! where `A_-` acts by strictly lower triangular matrices.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::first_violated_member;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nest::Nest;
use crate::radical::geometric_series;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// A set of positive indices: `{}`, `{1..n}`, `{n+1, n+2, ...}` or all of `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SupportSet {
    Empty,
    Initial(u64),
    Tail(u64),
    All,
}

impl SupportSet {
    pub fn initial(n: u64) -> Self {
        if n == 0 {
            SupportSet::Empty
        } else {
            SupportSet::Initial(n)
        }
    }

    pub fn tail(n: u64) -> Self {
        if n == 0 {
            SupportSet::All
        } else {
            SupportSet::Tail(n)
        }
    }

    pub fn normalized(self) -> Self {
        match self {
            SupportSet::Initial(n) => SupportSet::initial(n),
            SupportSet::Tail(n) => SupportSet::tail(n),
            s => s,
        }
    }

    /// `k` is 1-based.
    pub fn contains_index(self, k: u64) -> bool {
        match self.normalized() {
            SupportSet::Empty => false,
            SupportSet::Initial(n) => k >= 1 && k <= n,
            SupportSet::Tail(n) => k > n,
            SupportSet::All => k >= 1,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self.normalized(), SupportSet::Empty | SupportSet::Initial(_))
    }

    pub fn leq(self, other: Self) -> bool {
        use SupportSet::*;
        match (self.normalized(), other.normalized()) {
            (Empty, _) | (_, All) => true,
            (Initial(a), Initial(b)) => a <= b,
            (Tail(a), Tail(b)) => a >= b,
            _ => false,
        }
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normalized() {
            SupportSet::Empty => write!(f, "{{}}"),
            SupportSet::Initial(n) => write!(f, "{{1..{n}}}"),
            SupportSet::Tail(n) => write!(f, "{{{}..}}", n + 1),
            SupportSet::All => write!(f, "N"),
        }
    }
}

/// The annihilator of `{f : supp f ⊆ s}` is `{φ : supp φ ⊆ N \ s}`.
pub fn support_annihilator(s: SupportSet) -> SupportSet {
    match s.normalized() {
        SupportSet::Empty => SupportSet::All,
        SupportSet::All => SupportSet::Empty,
        SupportSet::Initial(n) => SupportSet::Tail(n),
        SupportSet::Tail(n) => SupportSet::Initial(n),
    }
}

/// Which space a descriptor lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// `c00(N)`, the finitely supported sequences.
    Primal,
    /// All sequences, the algebraic dual of `c00(N)`.
    Dual,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Primal => write!(f, "c00"),
            Side::Dual => write!(f, "sequences"),
        }
    }
}

/// A symbolic subspace of one summand: a support set, or the closure of the
/// initial sets under union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SymbolicSet {
    Support(SupportSet),
    /// `⋃ {1..n}` in the sequence space.
    FinitelySupported,
}

impl SymbolicSet {
    fn normalized(self, side: Side) -> Self {
        match (self, side) {
            (SymbolicSet::FinitelySupported, Side::Primal) => SymbolicSet::Support(SupportSet::All),
            (SymbolicSet::Support(s), _) => SymbolicSet::Support(s.normalized()),
            (s, _) => s,
        }
    }

    pub fn leq(self, other: Self, side: Side) -> bool {
        use SymbolicSet::*;
        match (self.normalized(side), other.normalized(side)) {
            (Support(a), Support(b)) => a.leq(b),
            (FinitelySupported, FinitelySupported) => true,
            (FinitelySupported, Support(b)) => b == SupportSet::All,
            (Support(a), FinitelySupported) => a.is_finite(),
        }
    }
}

impl fmt::Display for SymbolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicSet::Support(s) => write!(f, "{s}"),
            SymbolicSet::FinitelySupported => write!(f, "finite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    Bottom,
    Index(i64),
    Top,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Bottom => write!(f, "bottom"),
            Label::Index(k) => write!(f, "M{k}"),
            Label::Top => write!(f, "top"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OrderType {
    /// `ω` with a top adjoined.
    OmegaUp,
    /// `ω*` with a bottom adjoined.
    OmegaStarDown,
    /// `1 + ω* + ω + 1`.
    OneOmegaStarOmegaOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Base {
    /// `M_n = {1..n}`.
    Omega,
    /// `M_n = {n+1..}`.
    OmegaStar,
    /// `{n+1..} ⊕ 0` for `k = -n < 0`, `N ⊕ 0` for `k = 0`, `N ⊕ {1..k}` for `k > 0`.
    Zigzag,
}

/// Inclusive label range; `None` is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub start: Option<i64>,
    pub end: Option<i64>,
}

impl IndexRange {
    pub fn all() -> Self {
        IndexRange { start: None, end: None }
    }

    pub fn single(k: i64) -> Self {
        IndexRange { start: Some(k), end: Some(k) }
    }

    pub fn from(k: i64) -> Self {
        IndexRange { start: Some(k), end: None }
    }

    pub fn up_to(k: i64) -> Self {
        IndexRange { start: None, end: Some(k) }
    }

    pub fn between(a: i64, b: i64) -> Self {
        IndexRange { start: Some(a), end: Some(b) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SupportNest {
    base: Base,
    complemented: bool,
    side: Side,
}

/// Far labels used to read off the eventual shape of a family. Every catalog
/// block is eventually constant, `{1..|k|}` or `{|k|+1..}`.
const PROBE: i64 = 1 << 20;

impl SupportNest {
    /// `{0} ⊂ M_1 ⊂ M_2 ⊂ ... ⊂ c00` with `M_n = {1..n}`.
    pub fn omega() -> Self {
        SupportNest { base: Base::Omega, complemented: false, side: Side::Primal }
    }

    /// `{0} ⊂ ... ⊂ M_2 ⊂ M_1 ⊂ c00` with `M_n = {n+1..}`.
    pub fn omega_star() -> Self {
        SupportNest { base: Base::OmegaStar, complemented: false, side: Side::Primal }
    }

    /// The ordinal sum of the `ω*` and `ω` nests on `c00 ⊕ c00`.
    pub fn zigzag() -> Self {
        SupportNest { base: Base::Zigzag, complemented: false, side: Side::Primal }
    }

    pub fn catalog() -> Vec<(&'static str, SupportNest)> {
        vec![("c00-omega", Self::omega()), ("c00-omega-star", Self::omega_star()), ("c00-zigzag", Self::zigzag())]
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Self::catalog()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::Parse(format!("unknown catalog nest {name:?}")))
    }

    pub fn name(&self) -> String {
        let base = match self.base {
            Base::Omega => "c00-omega",
            Base::OmegaStar => "c00-omega-star",
            Base::Zigzag => "c00-zigzag",
        };
        if self.complemented {
            format!("{base}-dual")
        } else {
            base.to_string()
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn blocks(&self) -> usize {
        match self.base {
            Base::Zigzag => 2,
            _ => 1,
        }
    }

    fn label_domain(&self) -> (Option<i64>, Option<i64>) {
        match self.base {
            Base::Zigzag => (None, None),
            _ => (Some(1), None),
        }
    }

    pub fn is_valid_label(&self, label: Label) -> bool {
        match label {
            Label::Index(k) => self.label_domain().0.is_none_or(|s| k >= s),
            _ => true,
        }
    }

    /// `+1` if members grow with the label, `-1` if they shrink.
    fn direction(&self) -> i64 {
        let d = match self.base {
            Base::Omega | Base::Zigzag => 1,
            Base::OmegaStar => -1,
        };
        if self.complemented {
            -d
        } else {
            d
        }
    }

    fn base_member(&self, label: Label) -> Vec<SupportSet> {
        use SupportSet::{All, Empty};
        let b = self.blocks();
        match (self.base, label) {
            (_, Label::Bottom) => vec![Empty; b],
            (_, Label::Top) => vec![All; b],
            (Base::Omega, Label::Index(n)) => vec![SupportSet::initial(n as u64)],
            (Base::OmegaStar, Label::Index(n)) => vec![SupportSet::tail(n as u64)],
            (Base::Zigzag, Label::Index(k)) if k < 0 => vec![SupportSet::tail(k.unsigned_abs()), Empty],
            (Base::Zigzag, Label::Index(k)) => vec![All, SupportSet::initial(k as u64)],
        }
    }

    pub fn member(&self, label: Label) -> Result<Vec<SupportSet>> {
        if !self.is_valid_label(label) {
            return Err(Error::UnknownMember(format!("{label} in {}", self.name())));
        }
        let m = self.base_member(label);
        Ok(if self.complemented { m.into_iter().map(support_annihilator).collect() } else { m })
    }

    fn member_symbolic(&self, label: Label) -> Vec<SymbolicSet> {
        self.member(label).expect("label checked").into_iter().map(SymbolicSet::Support).collect()
    }

    pub fn leq(&self, a: &[SymbolicSet], b: &[SymbolicSet]) -> bool {
        a.iter().zip(b).all(|(x, y)| x.leq(*y, self.side))
    }

    /// Infinite ends of the label domain, as `±1`.
    fn ends(&self) -> Vec<i64> {
        let (start, end) = self.label_domain();
        let mut ends = Vec::new();
        if end.is_none() {
            ends.push(1);
        }
        if start.is_none() {
            ends.push(-1);
        }
        ends
    }

    /// Whether every nonempty subfamily has a least element.
    pub fn is_well_ordered(&self) -> bool {
        self.ends().iter().all(|e| e * self.direction() > 0)
    }

    /// Whether every nonempty subfamily has a greatest element.
    pub fn satisfies_acc(&self) -> bool {
        self.ends().iter().all(|e| e * self.direction() < 0)
    }

    pub fn order_type(&self) -> OrderType {
        match (self.is_well_ordered(), self.satisfies_acc()) {
            (true, _) => OrderType::OmegaUp,
            (_, true) => OrderType::OmegaStarDown,
            _ => OrderType::OneOmegaStarOmegaOne,
        }
    }

    /// The annihilator family in the sequence space, order reversed.
    pub fn dual(&self) -> Result<Self> {
        match self.side {
            Side::Primal => Ok(SupportNest { complemented: !self.complemented, side: Side::Dual, ..*self }),
            Side::Dual => Err(Error::Unsupported(
                "annihilators in the dual of the sequence space are not representable; use the preannihilator".into(),
            )),
        }
    }

    /// The preannihilator family `{f ∈ c00 : φ(f) = 0 for all φ ∈ M}`.
    pub fn preannihilator(&self) -> Result<Self> {
        match self.side {
            Side::Dual => Ok(SupportNest { complemented: !self.complemented, side: Side::Primal, ..*self }),
            Side::Primal => Err(Error::Unsupported("preannihilators are taken from the sequence space".into())),
        }
    }

    fn clip(&self, range: IndexRange) -> Result<(Option<i64>, Option<i64>)> {
        let (ds, de) = self.label_domain();
        let start = match (range.start, ds) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let end = match (range.end, de) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let (Some(a), Some(b)) = (start, end) {
            if a > b {
                return Err(Error::UnknownMember(format!("empty label range in {}", self.name())));
            }
        }
        Ok((start, end))
    }

    /// Limit of the members as the label runs to `sign · ∞`; `union` selects
    /// the union (for growing runs) or the intersection (for shrinking runs).
    fn limit(&self, sign: i64, union: bool) -> Result<Vec<SymbolicSet>> {
        let near = self.member(Label::Index(sign * PROBE))?;
        let far = self.member(Label::Index(sign * 2 * PROBE))?;
        near.into_iter()
            .zip(far)
            .map(|(a, b)| match (a, b, union) {
                _ if a == b => Ok(SymbolicSet::Support(a)),
                (SupportSet::Initial(_), SupportSet::Initial(_), true) => {
                    Ok(SymbolicSet::FinitelySupported.normalized(self.side))
                }
                (SupportSet::Tail(_), SupportSet::Tail(_), false) => Ok(SymbolicSet::Support(SupportSet::Empty)),
                _ => Err(Error::Internal(format!("unexpected asymptotic shape {a} → {b}"))),
            })
            .collect()
    }

    /// `⋃_{k ∈ range} M_k`, symbolically.
    pub fn union_over(&self, range: IndexRange) -> Result<Vec<SymbolicSet>> {
        let (start, end) = self.clip(range)?;
        let top = if self.direction() > 0 { end.ok_or(1) } else { start.ok_or(-1) };
        match top {
            Ok(k) => Ok(self.member_symbolic(Label::Index(k))),
            Err(sign) => self.limit(sign, true),
        }
    }

    /// `⋂_{k ∈ range} M_k`, symbolically.
    pub fn intersection_over(&self, range: IndexRange) -> Result<Vec<SymbolicSet>> {
        let (start, end) = self.clip(range)?;
        let bottom = if self.direction() > 0 { start.ok_or(-1) } else { end.ok_or(1) };
        match bottom {
            Ok(k) => Ok(self.member_symbolic(Label::Index(k))),
            Err(sign) => self.limit(sign, false),
        }
    }

    /// The label of the member equal to `sets`, if any.
    pub fn find_member(&self, sets: &[SymbolicSet]) -> Option<Label> {
        let mut supports = Vec::with_capacity(sets.len());
        for s in sets {
            match s.normalized(self.side) {
                SymbolicSet::Support(x) => supports.push(x),
                SymbolicSet::FinitelySupported => return None,
            }
        }
        let mut candidates = vec![Label::Bottom, Label::Top, Label::Index(0)];
        for s in &supports {
            if let SupportSet::Initial(n) | SupportSet::Tail(n) = s {
                candidates.push(Label::Index(*n as i64));
                candidates.push(Label::Index(-(*n as i64)));
            }
        }
        candidates.into_iter().find(|&l| self.is_valid_label(l) && self.member(l).ok().as_deref() == Some(&supports))
    }

    /// Every subfamily has its union and intersection in the family. Finite
    /// subfamilies are attained, so only the limits at infinite ends matter.
    pub fn is_complete(&self) -> bool {
        self.ends().into_iter().all(|e| {
            let growing = e * self.direction() > 0;
            self.limit(e, growing).map(|l| self.find_member(&l).is_some()).unwrap_or(false)
        })
    }

    /// A strictly decreasing run `M_{s·1} ⊋ M_{s·2} ⊋ ...`, as the sign `s`.
    pub fn decreasing_run(&self) -> Option<i64> {
        self.ends().into_iter().find(|e| e * self.direction() < 0)
    }

    fn contains_vector<S: Scalar>(&self, sets: &[SupportSet], x: &[Vec<S>]) -> bool {
        sets.iter()
            .zip(x)
            .all(|(s, v)| v.iter().enumerate().all(|(i, c)| c.is_zero() || s.contains_index(i as u64 + 1)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainUnion {
    pub union: Vec<SymbolicSet>,
    /// The member equal to the union, if the union is in the family.
    pub member: Option<Label>,
}

pub fn chain_union(nest: &SupportNest, range: IndexRange) -> Result<ChainUnion> {
    let union = nest.union_over(range)?;
    let member = nest.find_member(&union);
    Ok(ChainUnion { union, member })
}

/// `N(x)` and `N(x)_-` for a finitely supported `x`, one vector per summand
/// with coordinates `1, 2, ...`.
pub fn principal_support<S: Scalar>(nest: &SupportNest, x: &[Vec<S>]) -> Result<(Label, Label)> {
    if x.len() != nest.blocks() {
        return Err(Error::DimensionMismatch { expected: nest.blocks(), found: x.len() });
    }
    let indices: Vec<i64> =
        x.iter().flat_map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i as i64 + 1)).collect();
    if indices.is_empty() {
        return Err(Error::ZeroVector);
    }
    // Members only change at labels next to support indices.
    let mut candidates = vec![Label::Bottom, Label::Top];
    for k in indices.iter().flat_map(|&k| [k - 1, k, k + 1]).chain([0]) {
        for l in [Label::Index(k), Label::Index(-k)] {
            if nest.is_valid_label(l) && !candidates.contains(&l) {
                candidates.push(l);
            }
        }
    }
    let members: Vec<(Label, Vec<SymbolicSet>, bool)> = candidates
        .into_iter()
        .map(|l| {
            let sets = nest.member(l).expect("valid label");
            let inside = nest.contains_vector(&sets, x);
            (l, sets.into_iter().map(SymbolicSet::Support).collect(), inside)
        })
        .collect();
    let smallest = members.iter().filter(|m| m.2).min_by(|a, b| cmp_members(nest, &a.1, &b.1)).expect("top contains x");
    let largest_outside =
        members.iter().filter(|m| !m.2).max_by(|a, b| cmp_members(nest, &a.1, &b.1)).expect("bottom misses x");
    Ok((smallest.0, largest_outside.0))
}

fn cmp_members(nest: &SupportNest, a: &[SymbolicSet], b: &[SymbolicSet]) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    match (nest.leq(a, b), nest.leq(b, a)) {
        (true, true) => Equal,
        (true, false) => Less,
        _ => Greater,
    }
}

/// A functional on `c00` given by finitely many exceptional coordinates over a
/// constant tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailFunctional<S: Scalar> {
    pub exceptional: BTreeMap<u64, S>,
    pub tail_value: S,
}

impl<S: Scalar> TailFunctional<S> {
    pub fn constant(tail_value: S) -> Self {
        TailFunctional { exceptional: BTreeMap::new(), tail_value }
    }

    pub fn zero() -> Self {
        Self::constant(S::zero())
    }

    /// `φ(e_k)`, 1-based.
    pub fn value_at(&self, k: u64) -> S {
        self.exceptional.get(&k).cloned().unwrap_or_else(|| self.tail_value.clone())
    }

    /// Largest exceptional index, or 0.
    pub fn horizon(&self) -> u64 {
        self.exceptional.keys().next_back().copied().unwrap_or(0)
    }

    /// `φ(f) = Σ φ(k) f(k)` on a finitely supported `f`.
    pub fn apply(&self, f: &[S]) -> S {
        f.iter().enumerate().fold(S::zero(), |acc, (i, c)| acc + self.value_at(i as u64 + 1) * c.clone())
    }

    /// Whether `supp φ ⊆ s`.
    pub fn support_within(&self, s: SymbolicSet) -> bool {
        let nonzero_exceptions = || self.exceptional.iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| *k);
        if self.tail_value.is_zero() {
            return match s {
                SymbolicSet::FinitelySupported => true,
                SymbolicSet::Support(s) => nonzero_exceptions().all(|k| s.contains_index(k)),
            };
        }
        match s {
            SymbolicSet::Support(SupportSet::All) => true,
            SymbolicSet::Support(SupportSet::Tail(m)) => (1..=m).all(|k| self.value_at(k).is_zero()),
            _ => false,
        }
    }

    /// Whether `φ` annihilates `{f ∈ c00 : supp f ⊆ s}`.
    pub fn vanishes_on(&self, s: SupportSet) -> bool {
        self.support_within(SymbolicSet::Support(support_annihilator(s)))
    }
}

fn functional_within<S: Scalar>(phi: &[TailFunctional<S>], sets: &[SymbolicSet]) -> bool {
    phi.iter().zip(sets).all(|(p, s)| p.support_within(*s))
}

fn functional_vanishes_on<S: Scalar>(phi: &[TailFunctional<S>], sets: &[SupportSet]) -> bool {
    phi.iter().zip(sets).all(|(p, s)| p.vanishes_on(*s))
}

/// A functional `φ ∈ M∞⊥ \ ⋃ M_n⊥` for a decreasing run `M_n ↓ M∞`, with
/// `φ(x_n) = 1` on the transversal `x_n = e_{n+1} ∈ M_n \ M_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompletenessWitness<S: Scalar> {
    /// The run is `M_{s·1}, M_{s·2}, ...` for this sign `s`.
    pub run_sign: i64,
    /// `⋂ M_n`.
    pub limit: Label,
    /// The summand carrying the run.
    pub block: usize,
    pub functional: Vec<TailFunctional<S>>,
}

impl<S: Scalar> IncompletenessWitness<S> {
    pub fn run_label(&self, n: u64) -> Label {
        Label::Index(self.run_sign * n as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    /// `φ ∈ M∞⊥`.
    pub in_limit_annihilator: bool,
    /// `φ ∉ M_n⊥` for every `n ≥ 1`.
    pub outside_every_annihilator: bool,
    /// `φ(x_n) = 1` for every `n ≥ 1`.
    pub unit_on_transversal: bool,
    /// `⋃ M_n⊥` is not a member of the dual family.
    pub union_not_member: bool,
    /// `φ ∉ ⋃ M_n⊥`, so `⋃ M_n⊥ ⊊ M∞⊥`.
    pub strict_inclusion: bool,
}

impl WitnessCheck {
    pub fn passes(&self) -> bool {
        self.in_limit_annihilator
            && self.outside_every_annihilator
            && self.unit_on_transversal
            && self.union_not_member
            && self.strict_inclusion
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSupportNest<S: Scalar> {
    pub dual: SupportNest,
    /// Decided symbolically on the dual family.
    pub complete: bool,
    pub witness: Option<IncompletenessWitness<S>>,
}

/// The run's summand, where `M_n` is `{n+1..}` and the other summands are
/// constant.
fn run_block(nest: &SupportNest, sign: i64) -> Result<usize> {
    let at = |n: i64| nest.member(Label::Index(sign * n));
    let (m1, m2) = (at(1)?, at(2)?);
    let block = (0..nest.blocks())
        .find(|&b| m1[b] != m2[b])
        .ok_or_else(|| Error::Internal("run is not strictly decreasing".into()))?;
    for n in 1..=3 {
        let m = at(n)?;
        for (b, s) in m.iter().enumerate() {
            let expected = if b == block { SupportSet::tail(n as u64) } else { m1[b] };
            if *s != expected {
                return Err(Error::Internal(format!("run member {} has unexpected shape", sign * n)));
            }
        }
    }
    Ok(block)
}

pub fn dual_support_nest<S: Scalar>(nest: &SupportNest) -> Result<DualSupportNest<S>> {
    let dual = nest.dual()?;
    let complete = dual.is_complete();
    let witness = if complete {
        None
    } else {
        let sign =
            nest.decreasing_run().ok_or_else(|| Error::Internal("incomplete dual of a well-ordered nest".into()))?;
        let block = run_block(nest, sign)?;
        let limit_sets = nest.intersection_over(if sign > 0 { IndexRange::from(1) } else { IndexRange::up_to(-1) })?;
        let limit = nest.find_member(&limit_sets).ok_or_else(|| Error::Internal("nest is not complete".into()))?;
        let functional = (0..nest.blocks())
            .map(|b| if b == block { TailFunctional::constant(S::one()) } else { TailFunctional::zero() })
            .collect();
        Some(IncompletenessWitness { run_sign: sign, limit, block, functional })
    };
    Ok(DualSupportNest { dual, complete, witness })
}

/// Symbolic verification of an incompleteness witness against `nest`.
///
/// Run members are `{n+1..}` in the witness summand. Beyond the functional's
/// horizon `K` its values are the tail value, so the conditions for `n > K`
/// reduce to conditions on the tail value; smaller `n` are checked directly.
pub fn verify_witness<S: Scalar>(nest: &SupportNest, w: &IncompletenessWitness<S>) -> Result<WitnessCheck> {
    let dual = nest.dual()?;
    run_block(nest, w.run_sign).and_then(|b| {
        if b == w.block {
            Ok(())
        } else {
            Err(Error::Internal("witness summand does not carry the run".into()))
        }
    })?;
    let phi = &w.functional;
    let horizon = phi.iter().map(|p| p.horizon()).max().unwrap_or(0);
    let tail = &phi[w.block].tail_value;

    let in_limit_annihilator = functional_vanishes_on(phi, &nest.member(w.limit)?);

    let mut outside = !tail.is_zero();
    let mut unit = *tail == S::one();
    for n in 1..=horizon + 1 {
        let m = nest.member(w.run_label(n))?;
        outside &= !functional_vanishes_on(phi, &m);
        unit &= phi[w.block].value_at(n + 1) == S::one();
    }

    let run = if w.run_sign > 0 { IndexRange::from(1) } else { IndexRange::up_to(-1) };
    let union = dual.union_over(run)?;
    let union_not_member = dual.find_member(&union).is_none();
    let strict_inclusion = !functional_within(phi, &union);

    Ok(WitnessCheck {
        in_limit_annihilator,
        outside_every_annihilator: outside,
        unit_on_transversal: unit,
        union_not_member,
        strict_inclusion,
    })
}

/// `⋂_{k ∈ range} M_k⊥ = (⋃_{k ∈ range} M_k)⊥`, and whether
/// `⋃ M_k⊥ ⊆ (⋂ M_k)⊥` is an equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualCompleteCheck {
    pub meet_identity: bool,
    pub union_contained: bool,
    pub union_equal: bool,
}

pub fn dual_complete_check(nest: &SupportNest, range: IndexRange) -> Result<DualCompleteCheck> {
    let dual = nest.dual()?;
    let annihilate = |sets: Vec<SymbolicSet>| -> Result<Vec<SymbolicSet>> {
        sets.into_iter()
            .map(|s| match s {
                SymbolicSet::Support(x) => Ok(SymbolicSet::Support(support_annihilator(x))),
                SymbolicSet::FinitelySupported => Err(Error::Internal("primal union out of c00".into())),
            })
            .collect()
    };
    let meet_of_duals = dual.intersection_over(range)?;
    let dual_of_union = annihilate(nest.union_over(range)?)?;
    let union_of_duals = dual.union_over(range)?;
    let dual_of_meet = annihilate(nest.intersection_over(range)?)?;
    Ok(DualCompleteCheck {
        meet_identity: dual.leq(&meet_of_duals, &dual_of_union) && dual.leq(&dual_of_union, &meet_of_duals),
        union_contained: dual.leq(&union_of_duals, &dual_of_meet),
        union_equal: dual.leq(&dual_of_meet, &union_of_duals),
    })
}

/// The level-`n` space `span{e_{n+1}, ..., e_m}` of the truncated dual of the
/// `ω` nest, `0 ≤ n ≤ m`.
pub fn grade_level<S: Scalar>(m: usize, n: usize) -> Subspace<S> {
    assert!(n <= m);
    let rows: Vec<Vec<S>> = (n..m).map(|i| crate::matrix::unit_vector(m, i)).collect();
    Subspace::span_of(&rows, m).expect("unit vectors have length m")
}

/// The finite nest `{0} = level m ⊂ ... ⊂ level 0 = F^m`.
pub fn truncated_dual_nest<S: Scalar>(m: usize) -> Nest<S> {
    Nest::new(m, (0..=m).rev().map(|n| grade_level(m, n)).collect()).expect("levels form a chain")
}

/// Whether `q^n` maps level 0 into level `n` for `0 ≤ n ≤ m`.
pub fn grading_containment<S: Scalar>(q: &Matrix<S>, m: usize) -> bool {
    let mut power = Matrix::identity(m);
    for n in 0..=m {
        if !Subspace::column_space(&power).leq(&grade_level(m, n)).expect("same ambient") {
            return false;
        }
        power = power.matmul(q);
    }
    true
}

/// `S = 1 + Σ_{n=1}^{m} (a t)^n` on the level-`m` truncation, where `a`
/// preserves every level and `t` lowers each level by one.
pub fn graded_quasi_inverse<S: Scalar>(t: &Matrix<S>, a: &Matrix<S>, m: usize) -> Result<Matrix<S>> {
    let nest = truncated_dual_nest::<S>(m);
    for (name, op) in [("a", a), ("t", t)] {
        if op.rows() != m || op.cols() != m {
            return Err(Error::NotSquare { rows: op.rows(), cols: op.cols(), expected: m });
        }
        if let Some(i) = first_violated_member(&nest, op)? {
            return Err(Error::GradingViolation(format!("{name} does not preserve level {}", m - i)));
        }
    }
    for n in 0..m {
        if !grade_level(m, n).image(t).leq(&grade_level(m, n + 1)).expect("same ambient") {
            return Err(Error::GradingViolation(format!("t does not map level {n} into level {}", n + 1)));
        }
    }
    let q = a.matmul(t);
    if !q.pow(m as u32).is_zero() {
        return Err(Error::Internal("graded product is not nilpotent".into()));
    }
    let (inverse, _) = geometric_series(&q).ok_or_else(|| Error::Internal("series did not terminate".into()))?;
    Ok(inverse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(x: i64) -> Rational {
        Rational::from_i64(x)
    }

    fn e(k: usize) -> Vec<Rational> {
        crate::matrix::unit_vector(k, k - 1)
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(support_annihilator(SupportSet::Initial(2)), SupportSet::Tail(2));
        assert_eq!(support_annihilator(SupportSet::All), SupportSet::Empty);
        for s in [SupportSet::Empty, SupportSet::Initial(3), SupportSet::Tail(4), SupportSet::All] {
            assert_eq!(support_annihilator(support_annihilator(s)), s);
        }
        assert_eq!(SupportSet::tail(0), SupportSet::All);
        assert_eq!(SupportSet::Tail(0).normalized(), SupportSet::All);
    }

    #[test]
    fn order_types() {
        assert_eq!(SupportNest::omega().order_type(), OrderType::OmegaUp);
        assert_eq!(SupportNest::omega_star().order_type(), OrderType::OmegaStarDown);
        assert_eq!(SupportNest::zigzag().order_type(), OrderType::OneOmegaStarOmegaOne);
        assert_eq!(SupportNest::omega().dual().unwrap().order_type(), OrderType::OmegaStarDown);
        assert!(SupportNest::omega().dual().unwrap().satisfies_acc());
        for (_, n) in SupportNest::catalog() {
            assert!(n.is_complete());
        }
    }

    #[test]
    fn dual_examples() {
        let d = dual_support_nest::<Rational>(&SupportNest::omega()).unwrap();
        assert!(d.complete);
        assert!(d.witness.is_none());

        let d = dual_support_nest::<Rational>(&SupportNest::omega_star()).unwrap();
        assert!(!d.complete);
        let w = d.witness.unwrap();
        assert_eq!(w.functional, vec![TailFunctional::constant(q(1))]);
        assert_eq!(w.limit, Label::Bottom);
        assert!(verify_witness(&SupportNest::omega_star(), &w).unwrap().passes());

        let z = SupportNest::zigzag();
        let d = dual_support_nest::<Rational>(&z).unwrap();
        assert!(!d.complete);
        let w = d.witness.unwrap();
        assert_eq!(w.block, 0);
        assert!(verify_witness(&z, &w).unwrap().passes());

        let omega = SupportNest::omega();
        assert_eq!(omega.dual().unwrap().preannihilator().unwrap(), omega);
        assert!(omega.dual().unwrap().dual().is_err());
    }

    #[test]
    fn bad_witnesses_fail() {
        let n = SupportNest::omega_star();
        let mut w = dual_support_nest::<Rational>(&n).unwrap().witness.unwrap();
        w.functional[0].exceptional.insert(3, q(0));
        let check = verify_witness(&n, &w).unwrap();
        assert!(!check.unit_on_transversal);
        assert!(check.outside_every_annihilator);
        w.functional[0] = TailFunctional { exceptional: BTreeMap::from([(2, q(5))]), tail_value: q(0) };
        let check = verify_witness(&n, &w).unwrap();
        assert!(!check.outside_every_annihilator);
        assert!(!check.strict_inclusion);
    }

    #[test]
    fn union_examples() {
        let omega = SupportNest::omega();
        let u = chain_union(&omega, IndexRange::all()).unwrap();
        assert_eq!(u.member, Some(Label::Top));
        let dual = SupportNest::omega_star().dual().unwrap();
        let u = chain_union(&dual, IndexRange::all()).unwrap();
        assert_eq!(u.union, vec![SymbolicSet::FinitelySupported]);
        assert_eq!(u.member, None);
        assert_eq!(chain_union(&omega, IndexRange::single(4)).unwrap().member, Some(Label::Index(4)));
        assert_eq!(chain_union(&SupportNest::omega_star(), IndexRange::from(3)).unwrap().member, Some(Label::Index(3)));
        assert!(chain_union(&omega, IndexRange::between(5, 2)).is_err());
    }

    #[test]
    fn principal_examples() {
        let omega = SupportNest::omega();
        assert_eq!(principal_support(&omega, &[e(3)]).unwrap(), (Label::Index(3), Label::Index(2)));
        let mut x = e(5);
        x[0] = q(1);
        assert_eq!(principal_support(&omega, &[x]).unwrap(), (Label::Index(5), Label::Index(4)));
        assert_eq!(principal_support(&omega, &[e(1)]).unwrap(), (Label::Index(1), Label::Bottom));
        assert_eq!(principal_support(&SupportNest::omega_star(), &[e(1)]).unwrap(), (Label::Top, Label::Index(1)));
        assert_eq!(principal_support(&SupportNest::omega_star(), &[e(4)]).unwrap(), (Label::Index(3), Label::Index(4)));
        assert_eq!(principal_support(&omega, &[vec![q(0); 3]]), Err(Error::ZeroVector));

        let z = SupportNest::zigzag();
        assert_eq!(principal_support(&z, &[e(3), vec![]]).unwrap(), (Label::Index(-2), Label::Index(-3)));
        assert_eq!(principal_support(&z, &[e(1), vec![]]).unwrap(), (Label::Index(0), Label::Index(-1)));
        assert_eq!(principal_support(&z, &[e(1), e(2)]).unwrap(), (Label::Index(2), Label::Index(1)));
    }

    #[test]
    fn dual_complete_identities() {
        for (_, n) in SupportNest::catalog() {
            for r in [IndexRange::all(), IndexRange::from(2), IndexRange::up_to(3), IndexRange::between(1, 4)] {
                let c = dual_complete_check(&n, r).unwrap();
                assert!(c.meet_identity && c.union_contained);
            }
        }
        let c = dual_complete_check(&SupportNest::omega_star(), IndexRange::all()).unwrap();
        assert!(!c.union_equal);
        let c = dual_complete_check(&SupportNest::omega(), IndexRange::all()).unwrap();
        assert!(c.union_equal);
    }

    #[test]
    fn tail_functional_support() {
        let phi = TailFunctional { exceptional: BTreeMap::from([(1, q(0)), (2, q(0))]), tail_value: q(1) };
        assert!(phi.support_within(SymbolicSet::Support(SupportSet::Tail(2))));
        assert!(!phi.support_within(SymbolicSet::Support(SupportSet::Tail(3))));
        assert!(!phi.support_within(SymbolicSet::FinitelySupported));
        assert!(phi.vanishes_on(SupportSet::Initial(2)));
        assert_eq!(phi.apply(&[q(4), q(5), q(6)]), q(6));
    }

    #[test]
    fn graded_examples() {
        for m in 1..=4 {
            let s = graded_quasi_inverse(&Matrix::<Rational>::zeros(m, m), &Matrix::identity(m), m).unwrap();
            assert_eq!(s, Matrix::identity(m));
        }
        let t = &Matrix::<Rational>::unit(3, 1, 0) + &Matrix::unit(3, 2, 1);
        let s = graded_quasi_inverse(&t, &Matrix::identity(3), 3).unwrap();
        assert_eq!(s, &(&Matrix::identity(3) + &t) + &t.matmul(&t));
        assert_eq!(s.matmul(&(&Matrix::identity(3) - &t)), Matrix::identity(3));
        assert!(grading_containment(&t, 3));

        assert!(matches!(
            graded_quasi_inverse(&Matrix::<Rational>::unit(3, 0, 1), &Matrix::identity(3), 3),
            Err(Error::GradingViolation(_))
        ));
        assert!(matches!(
            graded_quasi_inverse(&Matrix::<Rational>::identity(3), &Matrix::identity(3), 3),
            Err(Error::GradingViolation(_))
        ));
        let nest = truncated_dual_nest::<Rational>(3);
        assert_eq!(nest.atom_dims(), vec![1, 1, 1]);
        assert!(nest.chain()[1].contains_vector(&e(3)).unwrap());
    }
}
