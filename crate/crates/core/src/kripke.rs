//! Kripke models for intuitionistic, minimal and S4 logic: well-formedness
//! checking, the forcing relation, and bounded countermodel search.
//!
//! Intuitionistic and minimal models are finite rooted partial orders with a
//! hereditary valuation and expanding domains; the root is below every world.
//! Minimal models treat absurdity as an ordinary hereditary atom, which is
//! what makes ex falso fail there. S4 models are finite rooted preorders
//! (reflexive and transitive, clusters allowed) over a propositional
//! valuation with no heredity constraint.
//!
//! Countermodel search enumerates models in a fixed total order — by world
//! count, then order-relation bitmask, then (for first-order models) domain
//! assignment, then valuation bitmask, each mask counting upward with the
//! first slot as least significant bit — so the first countermodel found is
//! reproducible.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::EngineError;
use crate::formula::Formula;

/// Which semantics a model carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Il,
    Minimal,
    S4,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Il => "IL",
            Flavor::Minimal => "Minimal",
            Flavor::S4 => "S4",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "IL" | "il" => Ok(Flavor::Il),
            "Minimal" | "minimal" => Ok(Flavor::Minimal),
            "S4" | "s4" => Ok(Flavor::S4),
            other => Err(format!("unknown flavor `{other}`")),
        }
    }
}

/// A valuation key: a propositional atom, a ground predicate instance, or
/// (in minimal models only) absurdity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroundAtom {
    Prop(String),
    Inst(String, String),
    Falsum,
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundAtom::Prop(p) => f.write_str(p),
            GroundAtom::Inst(p, d) => write!(f, "{p}({d})"),
            GroundAtom::Falsum => f.write_str("false"),
        }
    }
}

impl GroundAtom {
    fn parse(token: &str) -> Result<GroundAtom, String> {
        if token == "false" || token == "_|_" {
            return Ok(GroundAtom::Falsum);
        }
        if let Some(open) = token.find('(') {
            let close = token
                .strip_suffix(')')
                .ok_or_else(|| format!("malformed ground atom `{token}`"))?;
            let pred = &close[..open];
            let ind = &close[open + 1..];
            if pred.is_empty() || ind.is_empty() {
                return Err(format!("malformed ground atom `{token}`"));
            }
            return Ok(GroundAtom::Inst(pred.to_string(), ind.to_string()));
        }
        Ok(GroundAtom::Prop(token.to_string()))
    }
}

/// Caps for the countermodel enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub max_domain: usize,
    /// What exhausting these bounds does and does not establish.
    pub note: String,
}

impl SearchBounds {
    pub fn new(max_worlds: usize, max_domain: usize) -> Self {
        assert!(max_worlds >= 1 && max_domain >= 1, "bounds must be >= 1");
        SearchBounds {
            max_worlds,
            max_domain,
            note: "models are enumerated exhaustively up to these caps; \
                   absence of a countermodel within them is not a refutation"
                .to_string(),
        }
    }
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds::new(4, 3)
    }
}

/// A finite Kripke model. Worlds are indexed by position in `worlds`; the
/// order relation stores `(lower, upper)` pairs including the reflexive ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub flavor: Flavor,
    pub worlds: Vec<String>,
    pub root: usize,
    pub order: BTreeSet<(usize, usize)>,
    pub valuation: BTreeSet<(usize, GroundAtom)>,
    pub domains: Vec<BTreeSet<String>>,
}

impl KripkeModel {
    /// An empty model skeleton with `n` worlds named `w0..`, reflexive order,
    /// and root 0.
    pub fn with_worlds(flavor: Flavor, n: usize) -> Self {
        KripkeModel {
            flavor,
            worlds: (0..n).map(|i| format!("w{i}")).collect(),
            root: 0,
            order: (0..n).map(|i| (i, i)).collect(),
            valuation: BTreeSet::new(),
            domains: vec![BTreeSet::new(); n],
        }
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.order
            .range((w, 0)..(w + 1, 0))
            .map(|&(_, upper)| upper)
    }

    fn holds(&self, w: usize, atom: &GroundAtom) -> bool {
        self.valuation.contains(&(w, atom.clone()))
    }
}

/// Well-formedness findings; an empty list means the model is well formed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelReport {
    pub violations: Vec<String>,
}

impl ModelReport {
    pub fn is_well_formed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the flavor-specific invariants; every violation is reported with
/// the offending worlds or atoms.
pub fn check_model(m: &KripkeModel) -> ModelReport {
    let mut v = Vec::new();
    let n = m.worlds.len();
    if n == 0 {
        v.push("model has no worlds".to_string());
        return ModelReport { violations: v };
    }
    if m.root >= n {
        v.push(format!("root index {} out of range", m.root));
        return ModelReport { violations: v };
    }
    if m.domains.len() != n {
        v.push(format!(
            "domain table has {} entries for {} worlds",
            m.domains.len(),
            n
        ));
        return ModelReport { violations: v };
    }
    for &(a, b) in &m.order {
        if a >= n || b >= n {
            v.push(format!("order pair ({a}, {b}) out of range"));
            return ModelReport { violations: v };
        }
    }
    for &(w, _) in &m.valuation {
        if w >= n {
            v.push(format!("valuation mentions world index {w} out of range"));
            return ModelReport { violations: v };
        }
    }

    let name = |i: usize| m.worlds[i].clone();
    for i in 0..n {
        if !m.order.contains(&(i, i)) {
            v.push(format!("order is not reflexive at {}", name(i)));
        }
    }
    for &(a, b) in &m.order {
        for &(c, d) in &m.order {
            if b == c && !m.order.contains(&(a, d)) {
                v.push(format!(
                    "order is not transitive: {} <= {} <= {} but not {} <= {}",
                    name(a),
                    name(b),
                    name(d),
                    name(a),
                    name(d)
                ));
            }
        }
    }
    for i in 0..n {
        if !m.order.contains(&(m.root, i)) {
            v.push(format!("world {} is not reachable from the root", name(i)));
        }
    }

    match m.flavor {
        Flavor::Il | Flavor::Minimal => {
            for &(a, b) in &m.order {
                if a != b && m.order.contains(&(b, a)) {
                    v.push(format!(
                        "order is not antisymmetric: {} and {} are mutually related",
                        name(a),
                        name(b)
                    ));
                }
            }
            for &(a, b) in &m.order {
                if a == b {
                    continue;
                }
                for &(w, ref atom) in &m.valuation {
                    if w == a && !m.holds(b, atom) {
                        v.push(format!(
                            "heredity violation: {atom} holds at {} but not at {} above it",
                            name(a),
                            name(b)
                        ));
                    }
                }
                if !m.domains[a].is_subset(&m.domains[b]) {
                    v.push(format!(
                        "domain of {} does not expand into domain of {}",
                        name(a),
                        name(b)
                    ));
                }
            }
            for &(w, ref atom) in &m.valuation {
                if let GroundAtom::Inst(_, ind) = atom {
                    if !m.domains[w].contains(ind) {
                        v.push(format!(
                            "valuation mentions {atom} at {} but {ind} is not in its domain",
                            name(w)
                        ));
                    }
                }
                if m.flavor == Flavor::Il && *atom == GroundAtom::Falsum {
                    v.push(format!(
                        "absurdity is forced at {} but is never forced in IL models",
                        name(w)
                    ));
                }
            }
            let has_individuals = m.domains.iter().any(|d| !d.is_empty());
            if has_individuals && m.domains[m.root].is_empty() {
                v.push("root domain is empty in a first-order model".to_string());
            }
        }
        Flavor::S4 => {
            if m.domains.iter().any(|d| !d.is_empty()) {
                v.push("S4 models are propositional but carry domains".to_string());
            }
            for &(w, ref atom) in &m.valuation {
                if !matches!(atom, GroundAtom::Prop(_)) {
                    v.push(format!(
                        "S4 valuation at {} mentions {atom}, which is not a propositional atom",
                        name(w)
                    ));
                }
            }
        }
    }

    v.sort();
    v.dedup();
    ModelReport { violations: v }
}

fn fragment_check(m_flavor: Flavor, f: &Formula, operation: &'static str) -> Result<(), EngineError> {
    match m_flavor {
        Flavor::Il | Flavor::Minimal => {
            if f.has_modalities() {
                return Err(EngineError::fragment(
                    operation,
                    format!("modal operators are undefined in {m_flavor} models"),
                ));
            }
        }
        Flavor::S4 => {
            if f.has_quantifiers() || f.has_predicates() {
                return Err(EngineError::fragment(
                    operation,
                    "quantifiers are undefined in S4 models",
                ));
            }
        }
    }
    Ok(())
}

/// Universal closure over the free variables of `f`.
fn close_universally(f: &Formula) -> Formula {
    let mut closed = f.clone();
    for var in f.free_vars().into_iter().rev() {
        closed = Formula::forall(var, closed);
    }
    closed
}

/// The forcing relation at world `w`. Free variables are universally closed
/// before evaluation.
pub fn force(m: &KripkeModel, w: usize, f: &Formula) -> Result<bool, EngineError> {
    fragment_check(m.flavor, f, "force")?;
    assert!(w < m.worlds.len(), "world index out of range");
    let closed = close_universally(f);
    let mut env = Vec::new();
    Ok(match m.flavor {
        Flavor::Il | Flavor::Minimal => eval_int(m, w, &closed, &mut env),
        Flavor::S4 => eval_s4(m, w, &closed),
    })
}

fn eval_int(m: &KripkeModel, w: usize, f: &Formula, env: &mut Vec<(String, String)>) -> bool {
    match f {
        Formula::Atom(p) => m.holds(w, &GroundAtom::Prop(p.clone())),
        Formula::Pred(p, x) => {
            let ind = env
                .iter()
                .rev()
                .find(|(v, _)| v == x)
                .map(|(_, d)| d.clone())
                .unwrap_or_else(|| x.clone());
            m.holds(w, &GroundAtom::Inst(p.clone(), ind))
        }
        Formula::Falsum => m.flavor == Flavor::Minimal && m.holds(w, &GroundAtom::Falsum),
        Formula::And(a, b) => eval_int(m, w, a, env) && eval_int(m, w, b, env),
        Formula::Or(a, b) => eval_int(m, w, a, env) || eval_int(m, w, b, env),
        Formula::Imp(a, b) => {
            let succ: Vec<usize> = m.successors(w).collect();
            succ.into_iter()
                .all(|u| !eval_int(m, u, a, env) || eval_int(m, u, b, env))
        }
        Formula::Iff(a, b) => {
            let succ: Vec<usize> = m.successors(w).collect();
            succ.into_iter()
                .all(|u| eval_int(m, u, a, env) == eval_int(m, u, b, env))
        }
        Formula::Neg(a) => {
            let succ: Vec<usize> = m.successors(w).collect();
            succ.into_iter().all(|u| {
                !eval_int(m, u, a, env)
                    || (m.flavor == Flavor::Minimal && m.holds(u, &GroundAtom::Falsum))
            })
        }
        Formula::Forall(x, body) => {
            let succ: Vec<usize> = m.successors(w).collect();
            succ.into_iter().all(|u| {
                let doms: Vec<String> = m.domains[u].iter().cloned().collect();
                doms.into_iter().all(|d| {
                    env.push((x.clone(), d));
                    let r = eval_int(m, u, body, env);
                    env.pop();
                    r
                })
            })
        }
        Formula::Exists(x, body) => {
            let doms: Vec<String> = m.domains[w].iter().cloned().collect();
            doms.into_iter().any(|d| {
                env.push((x.clone(), d));
                let r = eval_int(m, w, body, env);
                env.pop();
                r
            })
        }
        Formula::Box(_) | Formula::Dia(_) => unreachable!("fragment checked"),
    }
}

fn eval_s4(m: &KripkeModel, w: usize, f: &Formula) -> bool {
    match f {
        Formula::Atom(p) => m.holds(w, &GroundAtom::Prop(p.clone())),
        Formula::Falsum => false,
        Formula::Neg(a) => !eval_s4(m, w, a),
        Formula::And(a, b) => eval_s4(m, w, a) && eval_s4(m, w, b),
        Formula::Or(a, b) => eval_s4(m, w, a) || eval_s4(m, w, b),
        Formula::Imp(a, b) => !eval_s4(m, w, a) || eval_s4(m, w, b),
        Formula::Iff(a, b) => eval_s4(m, w, a) == eval_s4(m, w, b),
        Formula::Box(a) => m.successors(w).all(|u| eval_s4(m, u, a)),
        Formula::Dia(a) => m.successors(w).any(|u| eval_s4(m, u, a)),
        _ => unreachable!("fragment checked"),
    }
}

// ---------------------------------------------------------------------------
// Countermodel search
// ---------------------------------------------------------------------------

/// Internal slot-indexed model used during enumeration; converted to a
/// `KripkeModel` only for the candidate that is actually returned.
struct Candidate {
    flavor: Flavor,
    succ: Vec<Vec<usize>>,
    /// world -> individual indices present
    dom: Vec<Vec<usize>>,
    /// slot id per (world, key, individual); usize::MAX when absent
    slot: Vec<usize>,
    key_count: usize,
    ind_count: usize,
    mask: u64,
}

/// A valuation key in slot order: propositional atom, predicate, or falsum.
#[derive(Clone, Debug, PartialEq, Eq)]
enum SlotKey {
    Prop(String),
    Pred(String),
    Falsum,
}

impl Candidate {
    fn slot_of(&self, w: usize, key: usize, ind: usize) -> usize {
        self.slot[(w * self.key_count + key) * self.ind_count + ind]
    }

    fn bit(&self, w: usize, key: usize, ind: usize) -> bool {
        let s = self.slot_of(w, key, ind);
        s != usize::MAX && self.mask & (1u64 << s) != 0
    }
}

fn eval_candidate(c: &Candidate, w: usize, f: &Formula, env: &mut Vec<(String, usize)>, keys: &[(SlotKey, usize)]) -> bool {
    let key_index = |name: &str, pred: bool| -> Option<usize> {
        keys.iter()
            .find(|(k, _)| match k {
                SlotKey::Prop(p) if !pred => p == name,
                SlotKey::Pred(p) if pred => p == name,
                _ => false,
            })
            .map(|(_, i)| *i)
    };
    match f {
        Formula::Atom(p) => key_index(p, false).is_some_and(|k| c.bit(w, k, 0)),
        Formula::Pred(p, x) => {
            let ind = env
                .iter()
                .rev()
                .find(|(v, _)| v == x)
                .map(|(_, d)| *d)
                .expect("free variables are closed before search");
            key_index(p, true).is_some_and(|k| c.bit(w, k, ind))
        }
        Formula::Falsum => {
            c.flavor == Flavor::Minimal
                && keys
                    .iter()
                    .find(|(k, _)| *k == SlotKey::Falsum)
                    .is_some_and(|(_, i)| c.bit(w, *i, 0))
        }
        Formula::And(a, b) => {
            eval_candidate(c, w, a, env, keys) && eval_candidate(c, w, b, env, keys)
        }
        Formula::Or(a, b) => {
            eval_candidate(c, w, a, env, keys) || eval_candidate(c, w, b, env, keys)
        }
        Formula::Imp(a, b) => match c.flavor {
            Flavor::S4 => !eval_candidate(c, w, a, env, keys) || eval_candidate(c, w, b, env, keys),
            _ => c.succ[w].iter().all(|&u| {
                !eval_candidate(c, u, a, env, keys) || eval_candidate(c, u, b, env, keys)
            }),
        },
        Formula::Iff(a, b) => match c.flavor {
            Flavor::S4 => eval_candidate(c, w, a, env, keys) == eval_candidate(c, w, b, env, keys),
            _ => c.succ[w].iter().all(|&u| {
                eval_candidate(c, u, a, env, keys) == eval_candidate(c, u, b, env, keys)
            }),
        },
        Formula::Neg(a) => match c.flavor {
            Flavor::S4 => !eval_candidate(c, w, a, env, keys),
            Flavor::Il => c.succ[w].iter().all(|&u| !eval_candidate(c, u, a, env, keys)),
            Flavor::Minimal => {
                let falsum = keys.iter().find(|(k, _)| *k == SlotKey::Falsum).map(|(_, i)| *i);
                c.succ[w].iter().all(|&u| {
                    !eval_candidate(c, u, a, env, keys)
                        || falsum.is_some_and(|k| c.bit(u, k, 0))
                })
            }
        },
        Formula::Forall(x, body) => c.succ[w].iter().all(|&u| {
            c.dom[u].clone().into_iter().all(|d| {
                env.push((x.clone(), d));
                let r = eval_candidate(c, u, body, env, keys);
                env.pop();
                r
            })
        }),
        Formula::Exists(x, body) => c.dom[w].clone().into_iter().any(|d| {
            env.push((x.clone(), d));
            let r = eval_candidate(c, w, body, env, keys);
            env.pop();
            r
        }),
        Formula::Box(a) => c.succ[w].iter().all(|&u| eval_candidate(c, u, a, env, keys)),
        Formula::Dia(a) => c.succ[w].iter().any(|&u| eval_candidate(c, u, a, env, keys)),
    }
}

type Relations = Arc<Vec<Vec<Vec<usize>>>>;

/// Frame enumerations depend only on world count and flavor class; cache
/// them across searches.
fn cached_relations(n: usize, preorder: bool) -> Relations {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Relations>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(n, preorder)) {
        return hit.clone();
    }
    let computed: Relations = Arc::new(if preorder {
        preorder_relations(n)
    } else {
        poset_relations(n)
    });
    cache
        .lock()
        .unwrap()
        .entry((n, preorder))
        .or_insert(computed)
        .clone()
}

/// Rooted partial orders on `n` indexed worlds with root 0 below everything,
/// embedded in index order; yielded as ascending bitmasks over the pairs
/// `(i, j)` with `1 <= i < j`, first pair least significant.
fn poset_relations(n: usize) -> Vec<Vec<Vec<usize>>> {
    let pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for j in 1..n {
            le[0][j] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1u64 << k) != 0 {
                le[i][j] = true;
            }
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| {
                !le[a][b] || (0..n).all(|c| !le[b][c] || le[a][c])
            })
        });
        if !transitive {
            continue;
        }
        out.push(
            (0..n)
                .map(|w| (0..n).filter(|&u| le[w][u]).collect())
                .collect(),
        );
    }
    out
}

/// Rooted preorders on `n` indexed worlds: reflexive, transitive, root
/// relates to every world. Yielded as ascending bitmasks over ordered pairs
/// `(i, j)`, `i != j`, `i >= 1`, sorted lexicographically.
fn preorder_relations(n: usize) -> Vec<Vec<Vec<usize>>> {
    let pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for j in 1..n {
            rel[0][j] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1u64 << k) != 0 {
                rel[i][j] = true;
            }
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| {
                !rel[a][b] || (0..n).all(|c| !rel[b][c] || rel[a][c])
            })
        });
        if !transitive {
            continue;
        }
        out.push(
            (0..n)
                .map(|w| (0..n).filter(|&u| rel[w][u]).collect())
                .collect(),
        );
    }
    out
}

/// Search for a model whose root fails to force `f`, enumerating well-formed
/// models in the documented fixed order. The returned model is well formed
/// and falsifies `f` at the root.
pub fn search_countermodel(
    f: &Formula,
    flavor: Flavor,
    bounds: &SearchBounds,
) -> Result<Option<KripkeModel>, EngineError> {
    fragment_check(flavor, f, "search_countermodel")?;
    let closed = close_universally(f);

    let mut keys: Vec<SlotKey> = Vec::new();
    for a in closed.atoms() {
        keys.push(SlotKey::Prop(a));
    }
    for p in closed.predicates() {
        keys.push(SlotKey::Pred(p));
    }
    if flavor == Flavor::Minimal {
        keys.push(SlotKey::Falsum);
    }
    let first_order = closed.has_quantifiers() || closed.has_predicates();
    let max_domain = if first_order { bounds.max_domain } else { 1 };
    let indexed_keys: Vec<(SlotKey, usize)> =
        keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();

    for n in 1..=bounds.max_worlds {
        let relations = cached_relations(n, flavor == Flavor::S4);
        for succ in relations.iter() {
            let order_pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|w| succ[w].iter().map(move |&u| (w, u)))
                .filter(|&(w, u)| w != u)
                .collect();
            let domain_choices = if first_order {
                enumerate_domains(n, max_domain, &order_pairs)
            } else {
                vec![vec![Vec::new(); n]]
            };
            for dom in domain_choices {
                if let Some(model) =
                    scan_valuations(&closed, flavor, n, &succ, &order_pairs, &dom, &keys, &indexed_keys, max_domain)
                {
                    debug_assert!(check_model(&model).is_well_formed());
                    debug_assert_eq!(force(&model, model.root, f), Ok(false));
                    return Ok(Some(model));
                }
            }
        }
    }
    Ok(None)
}

/// Domain assignments: each world gets a nonempty-at-root subset of the
/// individuals, expanding along the order. Enumerated as a base-2^m counter,
/// world 0 least significant.
fn enumerate_domains(
    n: usize,
    max_domain: usize,
    order_pairs: &[(usize, usize)],
) -> Vec<Vec<Vec<usize>>> {
    let m = max_domain;
    let per = 1u64 << m;
    let total = per.pow(n as u32);
    let mut out = Vec::new();
    'outer: for c in 0..total {
        let mut masks = Vec::with_capacity(n);
        for w in 0..n {
            masks.push((c / per.pow(w as u32)) % per);
        }
        if masks[0] == 0 {
            continue;
        }
        for &(w, u) in order_pairs {
            if masks[w] & !masks[u] != 0 {
                continue 'outer;
            }
        }
        out.push(
            masks
                .iter()
                .map(|&mask| (0..m).filter(|&d| mask & (1 << d) != 0).collect())
                .collect(),
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn scan_valuations(
    closed: &Formula,
    flavor: Flavor,
    n: usize,
    succ: &[Vec<usize>],
    order_pairs: &[(usize, usize)],
    dom: &[Vec<usize>],
    keys: &[SlotKey],
    indexed_keys: &[(SlotKey, usize)],
    max_domain: usize,
) -> Option<KripkeModel> {
    // Slot table: (world, key, individual) -> bit index, in enumeration order.
    let key_count = keys.len();
    let ind_count = max_domain.max(1);
    let mut slot = vec![usize::MAX; n * key_count * ind_count];
    let mut next = 0usize;
    for w in 0..n {
        for (k, key) in keys.iter().enumerate() {
            match key {
                SlotKey::Prop(_) | SlotKey::Falsum => {
                    slot[(w * key_count + k) * ind_count] = next;
                    next += 1;
                }
                SlotKey::Pred(_) => {
                    for &d in &dom[w] {
                        slot[(w * key_count + k) * ind_count + d] = next;
                        next += 1;
                    }
                }
            }
        }
    }
    if next > 60 {
        // The valuation mask would overflow; bounds this large are outside
        // the supported desk scale.
        return None;
    }

    // Heredity constraints as must-imply bit pairs (IL and minimal only).
    let mut implies: Vec<(u32, u32)> = Vec::new();
    if flavor != Flavor::S4 {
        for &(w, u) in order_pairs {
            for k in 0..key_count {
                for d in 0..ind_count {
                    let a = slot[(w * key_count + k) * ind_count + d];
                    let b = slot[(u * key_count + k) * ind_count + d];
                    if a != usize::MAX && b != usize::MAX {
                        implies.push((a as u32, b as u32));
                    }
                }
            }
        }
    }

    let mut candidate = Candidate {
        flavor,
        succ: succ.to_vec(),
        dom: dom.to_vec(),
        slot,
        key_count,
        ind_count,
        mask: 0,
    };

    'mask: for mask in 0u64..(1u64 << next) {
        for &(a, b) in &implies {
            if mask & (1 << a) != 0 && mask & (1 << b) == 0 {
                continue 'mask;
            }
        }
        candidate.mask = mask;
        let mut env = Vec::new();
        if !eval_candidate(&candidate, 0, closed, &mut env, indexed_keys) {
            return Some(realize(&candidate, flavor, n, order_pairs, dom, keys));
        }
    }
    None
}

fn realize(
    c: &Candidate,
    flavor: Flavor,
    n: usize,
    order_pairs: &[(usize, usize)],
    dom: &[Vec<usize>],
    keys: &[SlotKey],
) -> KripkeModel {
    let mut model = KripkeModel::with_worlds(flavor, n);
    for &(w, u) in order_pairs {
        model.order.insert((w, u));
    }
    for (w, d) in dom.iter().enumerate() {
        model.domains[w] = d.iter().map(|&i| format!("d{i}")).collect();
    }
    for w in 0..n {
        for (k, key) in keys.iter().enumerate() {
            for d in 0..c.ind_count {
                if c.bit(w, k, d) {
                    let atom = match key {
                        SlotKey::Prop(p) => GroundAtom::Prop(p.clone()),
                        SlotKey::Pred(p) => GroundAtom::Inst(p.clone(), format!("d{d}")),
                        SlotKey::Falsum => GroundAtom::Falsum,
                    };
                    model.valuation.insert((w, atom));
                }
            }
        }
    }
    model
}

// ---------------------------------------------------------------------------
// Model text and JSON formats
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("model format error on line {line}: {message}")]
pub struct ModelFormatError {
    pub line: usize,
    pub message: String,
}

/// Render the line-oriented model format: `flavor`, `world`, `le`, `dom` and
/// `val` records. Reflexive order pairs are implied and not written.
pub fn render_model_text(m: &KripkeModel) -> String {
    let mut out = String::new();
    out.push_str(&format!("flavor {}\n", m.flavor));
    for w in &m.worlds {
        out.push_str(&format!("world {w}\n"));
    }
    for &(a, b) in &m.order {
        if a != b {
            out.push_str(&format!("le {} {}\n", m.worlds[a], m.worlds[b]));
        }
    }
    for (w, dom) in m.domains.iter().enumerate() {
        for d in dom {
            out.push_str(&format!("dom {} {}\n", m.worlds[w], d));
        }
    }
    for (w, atom) in &m.valuation {
        out.push_str(&format!("val {} {}\n", m.worlds[*w], atom));
    }
    out
}

/// Parse the line-oriented model format. The first `world` line names the
/// root; the reflexive closure of `le` is implied.
pub fn parse_model_text(text: &str) -> Result<KripkeModel, ModelFormatError> {
    let mut flavor: Option<Flavor> = None;
    let mut worlds: Vec<String> = Vec::new();
    let mut les: Vec<(String, String)> = Vec::new();
    let mut doms: Vec<(String, String)> = Vec::new();
    let mut vals: Vec<(String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();
        let err = |message: String| ModelFormatError {
            line: lineno,
            message,
        };
        match head {
            "flavor" => {
                let [v] = rest.as_slice() else {
                    return Err(err("expected `flavor <IL|Minimal|S4>`".into()));
                };
                flavor = Some(v.parse().map_err(err)?);
            }
            "world" => {
                let [w] = rest.as_slice() else {
                    return Err(err("expected `world <id>`".into()));
                };
                if worlds.iter().any(|x| x == w) {
                    return Err(err(format!("duplicate world `{w}`")));
                }
                worlds.push(w.to_string());
            }
            "le" => {
                let [a, b] = rest.as_slice() else {
                    return Err(err("expected `le <id> <id>`".into()));
                };
                les.push((a.to_string(), b.to_string()));
            }
            "dom" => {
                let [w, d] = rest.as_slice() else {
                    return Err(err("expected `dom <world> <individual>`".into()));
                };
                doms.push((w.to_string(), d.to_string()));
            }
            "val" => {
                let [w, a] = rest.as_slice() else {
                    return Err(err("expected `val <world> <atom>`".into()));
                };
                vals.push((w.to_string(), a.to_string()));
            }
            other => return Err(err(format!("unknown record `{other}`"))),
        }
    }
    let flavor = flavor.ok_or(ModelFormatError {
        line: 0,
        message: "missing `flavor` line".to_string(),
    })?;
    if worlds.is_empty() {
        return Err(ModelFormatError {
            line: 0,
            message: "model has no worlds".to_string(),
        });
    }
    let n = worlds.len();
    let mut model = KripkeModel {
        flavor,
        worlds,
        root: 0,
        order: (0..n).map(|i| (i, i)).collect(),
        valuation: BTreeSet::new(),
        domains: vec![BTreeSet::new(); n],
    };
    let lookup = |m: &KripkeModel, w: &str| {
        m.world_index(w).ok_or(ModelFormatError {
            line: 0,
            message: format!("unknown world `{w}`"),
        })
    };
    for (a, b) in les {
        let (a, b) = (lookup(&model, &a)?, lookup(&model, &b)?);
        model.order.insert((a, b));
    }
    for (w, d) in doms {
        let w = lookup(&model, &w)?;
        model.domains[w].insert(d);
    }
    for (w, a) in vals {
        let w = lookup(&model, &w)?;
        let atom = GroundAtom::parse(&a).map_err(|message| ModelFormatError { line: 0, message })?;
        model.valuation.insert((w, atom));
    }
    Ok(model)
}

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    flavor: Flavor,
    worlds: Vec<String>,
    root: String,
    le: Vec<(String, String)>,
    dom: Vec<(String, Vec<String>)>,
    val: Vec<(String, String)>,
}

/// Machine-readable JSON rendering of a model, equivalent to the text format.
pub fn model_to_json(m: &KripkeModel) -> serde_json::Value {
    let doc = ModelDoc {
        flavor: m.flavor,
        worlds: m.worlds.clone(),
        root: m.worlds[m.root].clone(),
        le: m
            .order
            .iter()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| (m.worlds[a].clone(), m.worlds[b].clone()))
            .collect(),
        dom: m
            .domains
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_empty())
            .map(|(w, d)| (m.worlds[w].clone(), d.iter().cloned().collect()))
            .collect(),
        val: m
            .valuation
            .iter()
            .map(|(w, a)| (m.worlds[*w].clone(), a.to_string()))
            .collect(),
    };
    serde_json::to_value(doc).expect("model serialization cannot fail")
}

/// Parse the JSON model rendering.
pub fn model_from_json(value: &serde_json::Value) -> Result<KripkeModel, ModelFormatError> {
    let doc: ModelDoc = serde_json::from_value(value.clone()).map_err(|e| ModelFormatError {
        line: 0,
        message: e.to_string(),
    })?;
    let n = doc.worlds.len();
    if n == 0 {
        return Err(ModelFormatError {
            line: 0,
            message: "model has no worlds".to_string(),
        });
    }
    let index = |w: &str| {
        doc.worlds
            .iter()
            .position(|x| x == w)
            .ok_or(ModelFormatError {
                line: 0,
                message: format!("unknown world `{w}`"),
            })
    };
    let mut model = KripkeModel {
        flavor: doc.flavor,
        worlds: doc.worlds.clone(),
        root: index(&doc.root)?,
        order: (0..n).map(|i| (i, i)).collect(),
        valuation: BTreeSet::new(),
        domains: vec![BTreeSet::new(); n],
    };
    for (a, b) in &doc.le {
        model.order.insert((index(a)?, index(b)?));
    }
    for (w, ds) in &doc.dom {
        let w = index(w)?;
        model.domains[w].extend(ds.iter().cloned());
    }
    for (w, a) in &doc.val {
        let w = index(w)?;
        let atom = GroundAtom::parse(a).map_err(|message| ModelFormatError { line: 0, message })?;
        model.valuation.insert((w, atom));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn two_world_chain_p_top() -> KripkeModel {
        let mut m = KripkeModel::with_worlds(Flavor::Il, 2);
        m.order.insert((0, 1));
        m.valuation.insert((1, GroundAtom::Prop("p".into())));
        m
    }

    #[test]
    fn chain_with_p_at_top_is_well_formed() {
        assert!(check_model(&two_world_chain_p_top()).is_well_formed());
    }

    #[test]
    fn heredity_violation_is_reported() {
        let mut m = KripkeModel::with_worlds(Flavor::Il, 2);
        m.order.insert((0, 1));
        m.valuation.insert((0, GroundAtom::Prop("p".into())));
        let report = check_model(&m);
        assert!(!report.is_well_formed());
        assert!(report.violations.iter().any(|v| v.contains("heredity")));
    }

    #[test]
    fn single_reflexive_world_is_well_formed_s4() {
        let m = KripkeModel::with_worlds(Flavor::S4, 1);
        assert!(check_model(&m).is_well_formed());
    }

    #[test]
    fn forcing_on_the_two_world_chain() {
        let m = two_world_chain_p_top();
        assert_eq!(force(&m, 0, &parse_formula("~~p").unwrap()), Ok(true));
        assert_eq!(force(&m, 0, &parse_formula("p").unwrap()), Ok(false));
        assert_eq!(force(&m, 0, &parse_formula("p | ~p").unwrap()), Ok(false));
        assert_eq!(force(&m, 1, &parse_formula("p").unwrap()), Ok(true));
    }

    #[test]
    fn minimal_model_with_forced_falsum_fails_ex_falso() {
        let mut m = KripkeModel::with_worlds(Flavor::Minimal, 1);
        m.valuation.insert((0, GroundAtom::Falsum));
        assert!(check_model(&m).is_well_formed());
        assert_eq!(force(&m, 0, &parse_formula("false -> p").unwrap()), Ok(false));
    }

    #[test]
    fn forced_falsum_in_il_model_is_a_violation() {
        let mut m = KripkeModel::with_worlds(Flavor::Il, 1);
        m.valuation.insert((0, GroundAtom::Falsum));
        assert!(!check_model(&m).is_well_formed());
    }

    #[test]
    fn modal_formula_in_il_model_is_unsupported() {
        let m = two_world_chain_p_top();
        assert!(force(&m, 0, &parse_formula("[]p").unwrap()).is_err());
    }

    #[test]
    fn searches_find_the_two_world_chain_for_dnl() {
        let bounds = SearchBounds::new(2, 1);
        let f = parse_formula("~~p -> p").unwrap();
        let m = search_countermodel(&f, Flavor::Il, &bounds).unwrap().unwrap();
        assert_eq!(m.worlds.len(), 2);
        assert!(check_model(&m).is_well_formed());
        assert_eq!(force(&m, m.root, &f), Ok(false));
        assert_eq!(force(&m, 1, &parse_formula("p").unwrap()), Ok(true));
    }

    #[test]
    fn lem_fails_on_the_same_frame() {
        let bounds = SearchBounds::new(2, 1);
        let f = parse_formula("p | ~p").unwrap();
        let m = search_countermodel(&f, Flavor::Il, &bounds).unwrap().unwrap();
        assert_eq!(m.worlds.len(), 2);
        assert_eq!(force(&m, m.root, &f), Ok(false));
    }

    #[test]
    fn one_world_il_forcing_is_classical() {
        let bounds = SearchBounds::new(1, 1);
        let f = parse_formula("~~p -> p").unwrap();
        assert_eq!(search_countermodel(&f, Flavor::Il, &bounds).unwrap(), None);
    }

    #[test]
    fn text_format_round_trips() {
        let m = two_world_chain_p_top();
        let text = render_model_text(&m);
        assert_eq!(parse_model_text(&text).unwrap(), m);

        let json = model_to_json(&m);
        assert_eq!(model_from_json(&json).unwrap(), m);
    }

    #[test]
    fn bounds_monotonicity_on_a_sample() {
        let formulas = ["~~p -> p", "p | ~p", "p -> p", "((p -> q) -> p) -> p"];
        for text in formulas {
            let f = parse_formula(text).unwrap();
            let at3 = search_countermodel(&f, Flavor::Il, &SearchBounds::new(3, 1)).unwrap();
            if at3.is_none() {
                for w in 1..=2 {
                    let smaller =
                        search_countermodel(&f, Flavor::Il, &SearchBounds::new(w, 1)).unwrap();
                    assert!(smaller.is_none(), "{text} at {w} worlds");
                }
            }
        }
    }
}
