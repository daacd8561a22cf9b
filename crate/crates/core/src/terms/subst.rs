use std::collections::BTreeMap;

/// First-order terms with named variables: the interface shared by moves and
/// simple types so that one substitution and one unifier serve both.
pub trait Term: Clone + PartialEq {
    fn as_var(&self) -> Option<&str>;

    /// Appends variables not already in `out`, left to right.
    fn collect_vars(&self, out: &mut Vec<String>);

    fn occurs(&self, name: &str) -> bool;

    fn substitute(&self, lookup: &impl Fn(&str) -> Option<Self>) -> Self;

    /// Children to unify pairwise when both heads agree; `None` on a clash.
    /// Only called on non-variable terms.
    fn decompose<'a>(&'a self, other: &'a Self) -> Option<Vec<(&'a Self, &'a Self)>>;
}

/// A finite, idempotent map from variable names to terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subst<T> {
    bindings: BTreeMap<String, T>,
}

impl<T> Default for Subst<T> {
    fn default() -> Self {
        Subst {
            bindings: BTreeMap::new(),
        }
    }
}

impl<T: Term> Subst<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a substitution from bindings taken as given (no composition).
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, T)>) -> Self {
        Subst {
            bindings: pairs.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.bindings.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &T)> {
        self.bindings.iter()
    }

    pub(crate) fn insert_raw(&mut self, name: String, term: T) {
        self.bindings.insert(name, term);
    }

    pub fn apply(&self, t: &T) -> T {
        if self.bindings.is_empty() {
            return t.clone();
        }
        t.substitute(&|v| self.bindings.get(v).cloned())
    }

    /// Extends with `name := term`, pushing the new binding through the
    /// existing codomain. `term` must already be normalized by `self`.
    pub fn bind(&mut self, name: &str, term: T) {
        let single = |v: &str| (v == name).then(|| term.clone());
        for value in self.bindings.values_mut() {
            if value.occurs(name) {
                *value = value.substitute(&single);
            }
        }
        self.bindings.insert(name.to_string(), term);
    }

    /// `other ∘ self`: apply `self` first, then `other`.
    pub fn then(&self, other: &Subst<T>) -> Subst<T> {
        let mut out: BTreeMap<String, T> = self
            .bindings
            .iter()
            .map(|(k, v)| (k.clone(), other.apply(v)))
            .collect();
        for (k, v) in &other.bindings {
            out.entry(k.clone()).or_insert_with(|| v.clone());
        }
        out.retain(|k, v| v.as_var() != Some(k.as_str()));
        Subst { bindings: out }
    }

    pub fn is_idempotent(&self) -> bool {
        self.bindings
            .values()
            .all(|v| self.bindings.keys().all(|k| !v.occurs(k)))
    }
}
