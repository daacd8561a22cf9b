//! Reading partial involutions off types and synthesizing types from
//! partial involutions.
//!
//! A type is a binary tree: `l` goes to the domain of an arrow, `r` to its
//! codomain. A variable occurring twice links its two leaves by one
//! symmetric clause; the synthesis direction rebuilds the tree from the
//! `l`/`r` prefixes of the rules.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::inhabit::{is_minimal_tautology, Inhabitation};
use crate::machine::check_coherence;
use crate::terms::{canonicalize, Involution, LambdaTerm, Move, Side};
use crate::types::SimpleType;

/// Root-to-node sequence of `l`/`r` steps.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(pub Vec<Side>);

impl Path {
    fn child(&self, side: Side) -> Path {
        let mut steps = self.0.clone();
        steps.push(side);
        Path(steps)
    }

    fn is_strict_prefix_of(&self, other: &Path) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(root)");
        }
        for s in &self.0 {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DualityError {
    #[error("type variable {var} occurs {count} times (at most 2 allowed)")]
    OccurrenceBound { var: String, count: usize },
    #[error("rule endpoint {0} is not an l/r path ending in a variable")]
    NotAPath(Move),
    #[error("rule {lhs} -> {rhs} does not link a variable to itself")]
    UnlinkedVariables { lhs: Move, rhs: Move },
    #[error("leaf at path {0} is linked to more than one other leaf")]
    Linearity(Path),
    #[error("clause between {0} and {1} overlaps itself")]
    Overlap(Path, Path),
    #[error("copycat expansion exceeded depth {0}")]
    DepthExceeded(usize),
    #[error("pair constructor present: outside the characterized fragment")]
    PairConstructor,
}

/// One path to the unique occurrence of `var` in `t`.
fn path_move(var: &str, t: &SimpleType, tail: Move) -> Move {
    match t {
        SimpleType::Var(_) => tail,
        SimpleType::Arrow(a, b) => {
            if a.vars().iter().any(|v| v == var) {
                Move::l(path_move(var, a, tail))
            } else {
                Move::r(path_move(var, b, tail))
            }
        }
    }
}

/// The clause linking the two occurrences of `var` in `t`.
fn clause(var: &str, t: &SimpleType) -> (Move, Move) {
    let x = || Move::var("X");
    let SimpleType::Arrow(a, b) = t else {
        unreachable!("a twice-occurring variable sits under an arrow")
    };
    let in_a = count(var, a);
    let in_b = count(var, b);
    match (in_a, in_b) {
        (1, 1) => (
            Move::l(path_move(var, a, x())),
            Move::r(path_move(var, b, x())),
        ),
        (2, 0) => {
            let (u, v) = clause(var, a);
            (Move::l(u), Move::l(v))
        }
        _ => {
            let (u, v) = clause(var, b);
            (Move::r(u), Move::r(v))
        }
    }
}

fn count(var: &str, t: &SimpleType) -> usize {
    match t {
        SimpleType::Var(v) => usize::from(v == var),
        SimpleType::Arrow(a, b) => count(var, a) + count(var, b),
    }
}

/// `f_t`: one symmetric clause per twice-occurring variable of `t`.
pub fn type_to_involution(t: &SimpleType) -> Result<Involution, DualityError> {
    let mut clauses = Vec::new();
    for (var, n) in t.occurrences() {
        match n {
            1 => {}
            2 => clauses.push(clause(&var, t)),
            count => return Err(DualityError::OccurrenceBound { var, count }),
        }
    }
    Ok(canonicalize(&Involution::from_clauses(clauses)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisReport {
    pub ty: SimpleType,
    /// Variable at every leaf of `ty`, in left-to-right order.
    pub leaves: BTreeMap<Path, String>,
    pub warnings: Vec<String>,
}

/// Deepest path the copycat expansion may create.
const MAX_DEPTH: usize = 64;

fn endpoint(t: &Move) -> Result<(Path, &str), DualityError> {
    match t.split_prefix() {
        (path, Move::Var(x)) => Ok((Path(path), x)),
        _ => Err(DualityError::NotAPath(t.clone())),
    }
}

/// Rebuilds a type from the paths of `h`.
pub fn involution_to_type(h: &Involution) -> Result<SynthesisReport, DualityError> {
    let canon = canonicalize(h);
    let mut clauses: BTreeSet<(Path, Path)> = BTreeSet::new();
    for rule in &canon.rules {
        let (u, x) = endpoint(&rule.lhs)?;
        let (v, y) = endpoint(&rule.rhs)?;
        if x != y {
            return Err(DualityError::UnlinkedVariables {
                lhs: rule.lhs.clone(),
                rhs: rule.rhs.clone(),
            });
        }
        if u == v || u.is_strict_prefix_of(&v) || v.is_strict_prefix_of(&u) {
            return Err(DualityError::Overlap(u, v));
        }
        clauses.insert(if u <= v { (u, v) } else { (v, u) });
    }

    let mut tree = Tree::default();
    for (u, v) in &clauses {
        tree.insert(u);
        tree.insert(v);
    }
    tree.complete();

    let mut warnings = Vec::new();
    let mut expanded = false;
    let links = loop {
        let mut links = Vec::new();
        let mut grew = false;
        for (u, v) in &clauses {
            tree.expand(u, v, &mut links, &mut grew, &mut expanded)?;
        }
        if !grew {
            break links;
        }
    };
    if expanded {
        warnings.push("schematic clauses expanded leafwise".to_string());
    }

    let mut partner: BTreeMap<Path, Path> = BTreeMap::new();
    for (u, v) in links {
        for (a, b) in [(&u, &v), (&v, &u)] {
            if let Some(prev) = partner.insert(a.clone(), b.clone()) {
                if &prev != b {
                    return Err(DualityError::Linearity(a.clone()));
                }
            }
        }
    }

    let mut leaves = BTreeMap::new();
    let mut next = 0;
    for leaf in tree.leaves() {
        if leaves.contains_key(&leaf) {
            continue;
        }
        next += 1;
        let name = format!("a{next}");
        match partner.get(&leaf) {
            Some(other) => {
                leaves.insert(other.clone(), name.clone());
            }
            None => warnings.push(format!("untagged leaf at path {leaf} filled fresh")),
        }
        leaves.insert(leaf, name);
    }
    let ty = tree.build(&Path::default(), &leaves);
    Ok(SynthesisReport {
        ty,
        leaves,
        warnings,
    })
}

/// Prefix-closed node set of a binary tree.
#[derive(Default)]
struct Tree {
    nodes: BTreeSet<Path>,
}

impl Tree {
    fn insert(&mut self, p: &Path) {
        for n in 0..=p.0.len() {
            self.nodes.insert(Path(p.0[..n].to_vec()));
        }
    }

    fn is_internal(&self, p: &Path) -> bool {
        self.nodes.contains(&p.child(Side::L)) || self.nodes.contains(&p.child(Side::R))
    }

    /// Gives every internal node both children.
    fn complete(&mut self) {
        let internal: Vec<Path> = self
            .nodes
            .iter()
            .filter(|p| self.is_internal(p))
            .cloned()
            .collect();
        for p in internal {
            self.nodes.insert(p.child(Side::L));
            self.nodes.insert(p.child(Side::R));
        }
    }

    fn grow(&mut self, p: &Path) -> Result<(), DualityError> {
        if p.0.len() >= MAX_DEPTH {
            return Err(DualityError::DepthExceeded(MAX_DEPTH));
        }
        self.nodes.insert(p.child(Side::L));
        self.nodes.insert(p.child(Side::R));
        Ok(())
    }

    /// Pushes the clause `(u, v)` down to leaf pairs, growing a leaf endpoint
    /// when its partner is internal.
    fn expand(
        &mut self,
        u: &Path,
        v: &Path,
        links: &mut Vec<(Path, Path)>,
        grew: &mut bool,
        expanded: &mut bool,
    ) -> Result<(), DualityError> {
        if u.is_strict_prefix_of(v) || v.is_strict_prefix_of(u) || u == v {
            return Err(DualityError::Overlap(u.clone(), v.clone()));
        }
        match (self.is_internal(u), self.is_internal(v)) {
            (false, false) => {
                links.push((u.clone(), v.clone()));
                Ok(())
            }
            (iu, iv) => {
                *expanded = true;
                if !iu {
                    self.grow(u)?;
                    *grew = true;
                }
                if !iv {
                    self.grow(v)?;
                    *grew = true;
                }
                for side in [Side::L, Side::R] {
                    self.expand(&u.child(side), &v.child(side), links, grew, expanded)?;
                }
                Ok(())
            }
        }
    }

    /// Leaves in left-to-right order.
    fn leaves(&self) -> Vec<Path> {
        let mut out = Vec::new();
        self.collect_leaves(&Path::default(), &mut out);
        out
    }

    fn collect_leaves(&self, p: &Path, out: &mut Vec<Path>) {
        if self.is_internal(p) {
            self.collect_leaves(&p.child(Side::L), out);
            self.collect_leaves(&p.child(Side::R), out);
        } else {
            out.push(p.clone());
        }
    }

    fn build(&self, p: &Path, leaves: &BTreeMap<Path, String>) -> SimpleType {
        if self.is_internal(p) {
            SimpleType::arrow(
                self.build(&p.child(Side::L), leaves),
                self.build(&p.child(Side::R), leaves),
            )
        } else {
            SimpleType::var(leaves[p].clone())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenotationVerdict {
    pub is_denotation: bool,
    pub synthesized_type: SimpleType,
    pub tautology: bool,
    pub witness: Option<LambdaTerm>,
    /// Coherence of the input; reported, not enforced.
    pub coherent: bool,
    pub warnings: Vec<String>,
}

/// Whether `h` is the interpretation of some strictly affine combinator:
/// its synthesized type must be inhabited.
pub fn is_denotation(h: &Involution) -> Result<DenotationVerdict, DualityError> {
    if h.contains_pair() {
        return Err(DualityError::PairConstructor);
    }
    let coherent = check_coherence(h).is_coherent();
    let report = involution_to_type(h)?;
    let mut warnings = report.warnings;
    if !coherent {
        warnings.push("input is not a coherent involution".to_string());
    }
    let Inhabitation { provable, witness } = is_minimal_tautology(&report.ty);
    Ok(DenotationVerdict {
        is_denotation: provable,
        synthesized_type: report.ty,
        tautology: provable,
        witness,
        coherent,
        warnings,
    })
}
