//! Conjugacy in bounded Garside contexts: cycling, decycling, cyclic
//! sliding, sliding circuit sets and the decision procedure.
//!
//! Conjugation is `c⁻¹·g·c`. Cycling conjugates by `ι(g) = φ^{-m}(x₁)`,
//! which moves the first factor past `Δ^m` to the end.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::bounded::{DeltaNormal, GarsideMap};
use crate::category::CategoryContext;
use crate::error::{Error, Result};
use crate::word::SignedWord;

/// `c⁻¹·g·c` as a freely reduced signed word.
pub fn conj(g: &SignedWord, c: &SignedWord) -> Result<SignedWord> {
    Ok(c.inverse().concat(g)?.concat(c)?.free_reduce())
}

/// `c⁻¹·g·c` in Δ-normal form.
pub fn conj_normal(gm: &GarsideMap, g: &DeltaNormal, c: &DeltaNormal) -> Result<DeltaNormal> {
    let left = gm.multiply(&gm.inverse(c), g)?;
    gm.multiply(&left, c)
}

fn is_loop(gm: &GarsideMap, d: &DeltaNormal) -> Result<()> {
    if gm.normal_target(d) != d.source {
        return Err(Error::Composition(
            "conjugacy needs an element whose source and target agree".into(),
        ));
    }
    Ok(())
}

/// The initial factor `ι(d) = φ^{-m}(x₁)`, if `d` has factors.
pub fn initial_factor(gm: &GarsideMap, d: &DeltaNormal) -> Option<usize> {
    d.factors.first().map(|&x| gm.phi_pow(x, -d.m))
}

/// Conjugates by the initial factor. Pure Δ-powers are fixed.
pub fn cycling(gm: &GarsideMap, d: &DeltaNormal) -> Result<DeltaNormal> {
    is_loop(gm, d)?;
    match initial_factor(gm, d) {
        Some(i) => conj_normal(gm, d, &gm.simple_normal(i)),
        None => Ok(d.clone()),
    }
}

/// Conjugates by the inverse of the final factor. Pure Δ-powers are fixed.
pub fn decycling(gm: &GarsideMap, d: &DeltaNormal) -> Result<DeltaNormal> {
    is_loop(gm, d)?;
    match d.factors.last() {
        Some(&x) => conj_normal(gm, d, &gm.simple_inverse(x)),
        None => Ok(d.clone()),
    }
}

/// `ι(d) ∧ ∂(x_k)`: the part of the initial factor that the final factor
/// can absorb.
pub fn preferred_prefix(gm: &GarsideMap, d: &DeltaNormal) -> Option<usize> {
    let first = initial_factor(gm, d)?;
    let last = *d.factors.last()?;
    Some(gm.meet(first, gm.complement(last)))
}

/// Conjugates by the preferred prefix.
pub fn cyclic_sliding(gm: &GarsideMap, d: &DeltaNormal) -> Result<DeltaNormal> {
    is_loop(gm, d)?;
    match preferred_prefix(gm, d) {
        Some(p) => conj_normal(gm, d, &gm.simple_normal(p)),
        None => Ok(d.clone()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyOrbitNode {
    pub element: DeltaNormal,
    /// `c` with `element = c⁻¹·root·c`.
    pub conjugator: DeltaNormal,
    pub inf: i64,
    pub sup: i64,
}

#[derive(Debug, Clone)]
pub struct SlidingCircuitSet {
    /// Sorted by Δ-normal display.
    pub nodes: Vec<ConjugacyOrbitNode>,
    /// `(i, j)` when cyclic sliding sends node `i` to node `j`.
    pub edges: Vec<(usize, usize)>,
}

impl SlidingCircuitSet {
    pub fn position(&self, d: &DeltaNormal) -> Option<usize> {
        self.nodes.iter().position(|n| &n.element == d)
    }
}

/// Iterates cyclic sliding until an element repeats. Returns the first
/// element reached twice, which lies on a sliding circuit, and the
/// conjugator that leads to it.
pub fn slide_to_circuit(
    gm: &GarsideMap,
    d: &DeltaNormal,
    budget: usize,
) -> Result<(DeltaNormal, DeltaNormal)> {
    is_loop(gm, d)?;
    let mut seen: HashMap<DeltaNormal, DeltaNormal> = HashMap::new();
    let mut cur = d.clone();
    let mut conjugator = gm.identity_normal(d.source);
    loop {
        if let Some(c) = seen.get(&cur) {
            return Ok((cur, c.clone()));
        }
        if seen.len() >= budget {
            return Err(Error::ExplosionGuard { budget });
        }
        seen.insert(cur.clone(), conjugator.clone());
        let Some(p) = preferred_prefix(gm, &cur) else {
            return Ok((cur, conjugator));
        };
        let ps = gm.simple_normal(p);
        cur = conj_normal(gm, &cur, &ps)?;
        conjugator = gm.multiply(&conjugator, &ps)?;
    }
}

struct CircuitTest<'a> {
    gm: &'a GarsideMap,
    known: HashMap<DeltaNormal, bool>,
    budget: usize,
}

impl CircuitTest<'_> {
    /// Whether iterated sliding returns to `d`.
    fn on_circuit(&mut self, d: &DeltaNormal) -> Result<bool> {
        if let Some(&b) = self.known.get(d) {
            return Ok(b);
        }
        let mut path = vec![d.clone()];
        let mut index: HashMap<DeltaNormal, usize> = HashMap::from([(d.clone(), 0)]);
        loop {
            let next = cyclic_sliding(self.gm, path.last().unwrap())?;
            if self.known.contains_key(&next) {
                // Circuits are recorded whole, so a path running into a
                // known element never closes on itself.
                for e in path {
                    self.known.insert(e, false);
                }
                return Ok(false);
            }
            if let Some(&i) = index.get(&next) {
                for (j, e) in path.into_iter().enumerate() {
                    self.known.insert(e, j >= i);
                }
                return Ok(i == 0);
            }
            if path.len() >= self.budget {
                return Err(Error::ExplosionGuard {
                    budget: self.budget,
                });
            }
            index.insert(next.clone(), path.len());
            path.push(next);
        }
    }
}

/// All elements on sliding circuits in the conjugacy class of `d`, each
/// with a conjugator from `d`.
pub fn sliding_circuit_set(
    gm: &GarsideMap,
    d: &DeltaNormal,
    budget: usize,
) -> Result<SlidingCircuitSet> {
    let (start, c0) = slide_to_circuit(gm, d, budget)?;
    let (inf, sup) = (start.inf(), start.sup());
    let mut test = CircuitTest {
        gm,
        known: HashMap::new(),
        budget,
    };
    let mut found: HashMap<DeltaNormal, DeltaNormal> = HashMap::from([(start.clone(), c0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let cx = found[&x].clone();
        for s in gm.divisors(x.source) {
            if gm.is_identity(s) {
                continue;
            }
            let sn = gm.simple_normal(s);
            let y = conj_normal(gm, &x, &sn)?;
            if found.contains_key(&y) || y.inf() != inf || y.sup() != sup {
                continue;
            }
            if !test.on_circuit(&y)? {
                continue;
            }
            if found.len() >= budget {
                return Err(Error::ExplosionGuard { budget });
            }
            found.insert(y.clone(), gm.multiply(&cx, &sn)?);
            queue.push_back(y);
        }
    }
    let sorted: BTreeMap<String, (DeltaNormal, DeltaNormal)> = found
        .into_iter()
        .map(|(e, c)| (gm.display(&e), (e, c)))
        .collect();
    let nodes: Vec<ConjugacyOrbitNode> = sorted
        .into_values()
        .map(|(element, conjugator)| ConjugacyOrbitNode {
            inf: element.inf(),
            sup: element.sup(),
            element,
            conjugator,
        })
        .collect();
    let mut edges = Vec::new();
    for (i, n) in nodes.iter().enumerate() {
        let next = cyclic_sliding(gm, &n.element)?;
        if let Some(j) = nodes.iter().position(|m| m.element == next) {
            edges.push((i, j));
        }
    }
    Ok(SlidingCircuitSet { nodes, edges })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugacyAnswer {
    No,
    /// `c` with `c⁻¹·g·c = h`.
    Yes(DeltaNormal),
}

/// Decides whether `g` and `h` are conjugate. A returned witness has been
/// checked by recomputing `c⁻¹·g·c`.
pub fn are_conjugate(
    gm: &GarsideMap,
    g: &DeltaNormal,
    h: &DeltaNormal,
    budget: usize,
) -> Result<ConjugacyAnswer> {
    is_loop(gm, g)?;
    is_loop(gm, h)?;
    let sc = sliding_circuit_set(gm, g, budget)?;
    let (h0, ch) = slide_to_circuit(gm, h, budget)?;
    let Some(i) = sc.position(&h0) else {
        return Ok(ConjugacyAnswer::No);
    };
    let witness = gm.multiply(&sc.nodes[i].conjugator, &gm.inverse(&ch))?;
    if &conj_normal(gm, g, &witness)? != h {
        return Err(Error::Validation("conjugator failed verification".into()));
    }
    Ok(ConjugacyAnswer::Yes(witness))
}

/// Signed-word front end for [`are_conjugate`]; the witness is returned as
/// a signed word and checked again by groupoid equality.
pub fn are_conjugate_words(
    ctx: &CategoryContext,
    gm: &GarsideMap,
    g: &SignedWord,
    h: &SignedWord,
) -> Result<Option<SignedWord>> {
    let budget = ctx.limits().node_budget;
    match are_conjugate(gm, &gm.delta_normalize(g)?, &gm.delta_normalize(h)?, budget)? {
        ConjugacyAnswer::No => Ok(None),
        ConjugacyAnswer::Yes(c) => {
            let w = gm.to_signed_word(&c);
            if !ctx.groupoid_equal(&conj(g, &w)?, h)? {
                return Err(Error::Validation("conjugator failed verification".into()));
            }
            Ok(Some(w))
        }
    }
}

/// Elements of the super summit set reachable by the cycling/decycling
/// iteration: the distinct states visited, for inspection in tests.
pub fn cycling_orbit(gm: &GarsideMap, d: &DeltaNormal, steps: usize) -> Result<Vec<DeltaNormal>> {
    let mut out = vec![d.clone()];
    let mut seen: HashSet<DeltaNormal> = HashSet::from([d.clone()]);
    let mut cur = d.clone();
    for _ in 0..steps {
        cur = cycling(gm, &cur)?;
        if !seen.insert(cur.clone()) {
            break;
        }
        out.push(cur.clone());
    }
    Ok(out)
}
