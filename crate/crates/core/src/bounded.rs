//! Garside maps: the bounded case, where the family is the set of left
//! divisors of one element Δ per object.
//!
//! Everything here runs on a precomputed table of simples. Building the
//! table uses the category oracles once; afterwards products, quotients,
//! complements and φ are array lookups.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::category::CategoryContext;
use crate::error::{Error, Result};
use crate::garside::GarsideFamily;
use crate::reversing::right_lcm;
use crate::word::{GenId, ObjectId, Presentation, Sign, SignedWord, Word};

#[derive(Debug, Clone)]
pub struct GarsideMap {
    words: Vec<Word>,
    labels: Vec<String>,
    source: Vec<ObjectId>,
    target: Vec<ObjectId>,
    identity: Vec<usize>,
    delta: Vec<usize>,
    succ: Vec<Vec<Option<usize>>>,
    rank: Vec<usize>,
    le: Vec<Vec<bool>>,
    quot: Vec<Vec<Option<usize>>>,
    mul: Vec<Vec<Option<usize>>>,
    rquot: Vec<Vec<Option<usize>>>,
    comp: Vec<usize>,
    comp_inv: Vec<usize>,
    phi: Vec<usize>,
    phi_inv: Vec<usize>,
    phi_obj: Vec<ObjectId>,
    phi_obj_inv: Vec<ObjectId>,
    gen_factors: Vec<Vec<usize>>,
}

/// Why no Garside map was found: the object concerned and a description of
/// the bounded search that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnboundedCertificate {
    pub object: ObjectId,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub enum Boundedness {
    Bounded(Box<GarsideMap>),
    Unbounded(UnboundedCertificate),
}

impl Boundedness {
    pub fn map(self) -> Option<GarsideMap> {
        match self {
            Boundedness::Bounded(m) => Some(*m),
            Boundedness::Unbounded(_) => None,
        }
    }
}

/// Looks for Δ as the right-lcm of the family at each object and checks
/// that the family is exactly the set of nontrivial left divisors of Δ.
pub fn build_garside_map(ctx: &CategoryContext, family: &GarsideFamily) -> Result<Boundedness> {
    let p = ctx.presentation();
    let budget = if ctx.is_noetherian() {
        ctx.limits().divisor_budget
    } else {
        ctx.limits().probe_budget
    };
    let mut per_object: Vec<Vec<Word>> = Vec::new();
    let mut deltas = Vec::new();
    for x in 0..p.object_count() {
        let x = ObjectId(x);
        let unbounded = |reason: String| {
            Ok(Boundedness::Unbounded(UnboundedCertificate {
                object: x,
                reason,
            }))
        };
        let elems: Vec<&Word> = family.elements().iter().filter(|w| w.source == x).collect();
        let mut delta = ctx.identity(x);
        for e in &elems {
            delta = match right_lcm(ctx, &delta, e) {
                Ok(l) => l,
                Err(Error::NoCommonMultiple) => {
                    return unbounded(format!(
                        "{} and {} have no common right multiple",
                        p.display_word(&delta),
                        p.display_word(e)
                    ))
                }
                Err(Error::Inconclusive(m)) => {
                    return unbounded(format!("lcm search gave up: {m}"))
                }
                Err(e) => return Err(e),
            };
        }
        if elems.is_empty() && p.generators().iter().any(|g| g.source == x) {
            return unbounded("the family has no element at this object".into());
        }
        let divisors = match ctx.left_divisors(&delta, budget) {
            Ok(d) => d,
            Err(Error::ExplosionGuard { budget }) => {
                return unbounded(format!(
                    "candidate {} has more than {budget} distinct left divisors",
                    p.display_word(&delta)
                ))
            }
            Err(e) => return Err(e),
        };
        for d in divisors.iter().filter(|d| !d.is_empty()) {
            if !family.contains(ctx, d)? {
                return unbounded(format!(
                    "left divisor {} of {} is outside the family",
                    p.display_word(d),
                    p.display_word(&delta)
                ));
            }
        }
        if !ctx.is_noetherian() {
            return Err(Error::Unsupported(
                "Garside map tables need a Noetherian context".into(),
            ));
        }
        deltas.push(delta);
        per_object.push(divisors);
    }

    assemble(ctx, per_object, &deltas).map(|m| Boundedness::Bounded(Box::new(m)))
}

/// The Garside map with the given Δ at each object, when the left divisors
/// of Δ are finite in number and closed under right divisors.
pub fn garside_map_for_delta(ctx: &CategoryContext, deltas: &[Word]) -> Result<Boundedness> {
    let p = ctx.presentation();
    if deltas.len() != p.object_count() || deltas.iter().enumerate().any(|(x, d)| d.source.0 != x) {
        return Err(Error::Validation(
            "one Δ per object, in object order".into(),
        ));
    }
    if !ctx.is_noetherian() || !ctx.is_complete() {
        return Err(Error::Unsupported(
            "Garside maps need a complete Noetherian context".into(),
        ));
    }
    let mut per_object = Vec::new();
    for d in deltas {
        match ctx.left_divisors(d, ctx.limits().divisor_budget) {
            Ok(divs) => per_object.push(divs),
            Err(Error::ExplosionGuard { budget }) => {
                return Ok(Boundedness::Unbounded(UnboundedCertificate {
                    object: d.source,
                    reason: format!(
                        "{} has more than {budget} distinct left divisors",
                        p.display_word(d)
                    ),
                }))
            }
            Err(e) => return Err(e),
        }
    }
    match assemble(ctx, per_object, deltas) {
        Ok(m) => Ok(Boundedness::Bounded(Box::new(m))),
        Err(Error::Validation(reason)) => Ok(Boundedness::Unbounded(UnboundedCertificate {
            object: ObjectId(0),
            reason,
        })),
        Err(e) => Err(e),
    }
}

fn assemble(
    ctx: &CategoryContext,
    per_object: Vec<Vec<Word>>,
    deltas: &[Word],
) -> Result<GarsideMap> {
    let p = ctx.presentation();
    let mut words = Vec::new();
    let mut index: HashMap<(ObjectId, Vec<GenId>), usize> = HashMap::new();
    for w in per_object.into_iter().flatten() {
        let c = ctx.canonical(&w)?;
        index.insert((c.source, c.letters.clone()), words.len());
        words.push(c);
    }
    let mut succ = vec![vec![None; p.generators().len()]; words.len()];
    for (i, w) in words.iter().enumerate() {
        for g in p.generators().iter().filter(|g| g.source == w.target) {
            let c = ctx.canonical(&w.concat(&p.word(&[g.id])?)?)?;
            succ[i][g.id] = index.get(&(c.source, c.letters)).copied();
        }
    }
    let delta_idx = deltas
        .iter()
        .map(|d| {
            let c = ctx.canonical(d)?;
            Ok(index[&(c.source, c.letters)])
        })
        .collect::<Result<Vec<_>>>()?;
    GarsideMap::from_parts(ctx, words, succ, delta_idx)
}

impl GarsideMap {
    /// Assembles the tables from the simples, their right-multiplication
    /// graph by generators and the index of Δ at each object. `words` must
    /// contain every identity.
    pub fn from_parts(
        ctx: &CategoryContext,
        words: Vec<Word>,
        succ: Vec<Vec<Option<usize>>>,
        delta: Vec<usize>,
    ) -> Result<Self> {
        let p = ctx.presentation();
        let n = words.len();
        let source: Vec<ObjectId> = words.iter().map(|w| w.source).collect();
        let target: Vec<ObjectId> = words.iter().map(|w| w.target).collect();
        let mut identity = vec![usize::MAX; p.object_count()];
        for (i, w) in words.iter().enumerate() {
            if w.is_empty() {
                identity[w.source.0] = i;
            }
        }
        if identity.contains(&usize::MAX) {
            return Err(Error::Validation("an object has no identity simple".into()));
        }
        let rank = longest_paths(&succ, &identity, n)?;

        let mut le = vec![vec![false; n]; n];
        let mut quot = vec![vec![None; n]; n];
        for i in 0..n {
            let start = identity[target[i].0];
            quot[i][i] = Some(start);
            le[i][i] = true;
            let mut queue = VecDeque::from([(i, start)]);
            while let Some((j, q)) = queue.pop_front() {
                for (g, next) in succ[j].iter().enumerate() {
                    let Some(k) = *next else { continue };
                    if le[i][k] {
                        continue;
                    }
                    let qk = succ[q][g].ok_or_else(|| {
                        Error::Validation(format!(
                            "right divisor of {} is not simple",
                            p.display_word(&words[k])
                        ))
                    })?;
                    le[i][k] = true;
                    quot[i][k] = Some(qk);
                    queue.push_back((k, qk));
                }
            }
        }
        let mut mul = vec![vec![None; n]; n];
        let mut rquot = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                if let Some(q) = quot[i][j] {
                    mul[i][q] = Some(j);
                    rquot[j][q] = Some(i);
                }
            }
        }
        let mut comp = vec![0; n];
        for i in 0..n {
            let d = delta[source[i].0];
            comp[i] = quot[i][d].ok_or_else(|| {
                Error::Validation(format!("{} does not divide Δ", p.display_word(&words[i])))
            })?;
        }
        let comp_inv = invert(&comp, "∂")?;
        let phi: Vec<usize> = (0..n).map(|i| comp[comp[i]]).collect();
        let phi_inv = invert(&phi, "φ")?;
        let phi_obj: Vec<ObjectId> = delta.iter().map(|&d| target[d]).collect();
        let phi_obj_inv = {
            let raw: Vec<usize> = phi_obj.iter().map(|o| o.0).collect();
            invert(&raw, "φ on objects")?
                .into_iter()
                .map(ObjectId)
                .collect()
        };
        let labels = words
            .iter()
            .map(|w| p.display_compact(&w.letters))
            .collect();
        let mut map = GarsideMap {
            words,
            labels,
            source,
            target,
            identity,
            delta,
            succ,
            rank,
            le,
            quot,
            mul,
            rquot,
            comp,
            comp_inv,
            phi,
            phi_inv,
            phi_obj,
            phi_obj_inv,
            gen_factors: Vec::new(),
        };
        map.gen_factors = generator_factors(ctx, &map)?;
        Ok(map)
    }

    /// The nontrivial simples as a family for the oracle-driven routines.
    pub fn family(&self) -> GarsideFamily {
        GarsideFamily::from_canonical(
            self.words
                .iter()
                .filter(|w| !w.is_empty())
                .cloned()
                .collect(),
        )
    }

    pub fn simple_count(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, s: usize) -> &Word {
        &self.words[s]
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn source(&self, s: usize) -> ObjectId {
        self.source[s]
    }

    pub fn target(&self, s: usize) -> ObjectId {
        self.target[s]
    }

    pub fn identity(&self, x: ObjectId) -> usize {
        self.identity[x.0]
    }

    pub fn is_identity(&self, s: usize) -> bool {
        self.words[s].is_empty()
    }

    pub fn delta(&self, x: ObjectId) -> usize {
        self.delta[x.0]
    }

    pub fn is_delta(&self, s: usize) -> bool {
        self.delta[self.source[s].0] == s
    }

    /// All simples with source `x`, the identity first.
    pub fn divisors(&self, x: ObjectId) -> Vec<usize> {
        (0..self.words.len())
            .filter(|&s| self.source[s] == x)
            .collect()
    }

    /// Length of a longest generator path to `s`.
    pub fn rank(&self, s: usize) -> usize {
        self.rank[s]
    }

    /// The simple represented by `w`, if it is one.
    pub fn simple_of(&self, w: &Word) -> Option<usize> {
        let mut s = self.identity[w.source.0];
        for &g in &w.letters {
            s = self.succ[s][g]?;
        }
        Some(s)
    }

    pub fn le(&self, s: usize, t: usize) -> bool {
        self.le[s][t]
    }

    /// `q` with `s·q = t`.
    pub fn quotient(&self, s: usize, t: usize) -> Option<usize> {
        self.quot[s][t]
    }

    /// `s·t` when it is simple.
    pub fn product(&self, s: usize, t: usize) -> Option<usize> {
        self.mul[s][t]
    }

    /// `q` with `q·s = t`.
    pub fn right_quotient(&self, t: usize, s: usize) -> Option<usize> {
        self.rquot[t][s]
    }

    /// ∂s, the simple with `s·∂s = Δ`.
    pub fn complement(&self, s: usize) -> usize {
        self.comp[s]
    }

    /// The simple `y` with `y·s = Δ`.
    pub fn complement_inverse(&self, s: usize) -> usize {
        self.comp_inv[s]
    }

    pub fn phi(&self, s: usize) -> usize {
        self.phi[s]
    }

    pub fn phi_inverse(&self, s: usize) -> usize {
        self.phi_inv[s]
    }

    /// φ^k on simples, for any integer `k`.
    pub fn phi_pow(&self, s: usize, k: i64) -> usize {
        let mut s = s;
        for _ in 0..k.unsigned_abs() {
            s = if k > 0 { self.phi[s] } else { self.phi_inv[s] };
        }
        s
    }

    pub fn phi_object(&self, x: ObjectId, k: i64) -> ObjectId {
        let mut x = x;
        for _ in 0..k.unsigned_abs() {
            x = if k > 0 {
                self.phi_obj[x.0]
            } else {
                self.phi_obj_inv[x.0]
            };
        }
        x
    }

    /// Greatest common left divisor of two simples with the same source.
    pub fn meet(&self, s: usize, t: usize) -> usize {
        let mut c = self.identity[self.source[s].0];
        'up: loop {
            for &next in self.succ[c].iter().flatten() {
                if self.le[next][s] && self.le[next][t] {
                    c = next;
                    continue 'up;
                }
            }
            return c;
        }
    }

    /// Least common right multiple of two simples with the same source.
    pub fn join(&self, s: usize, t: usize) -> usize {
        (0..self.words.len())
            .filter(|&k| self.le[s][k] && self.le[t][k])
            .min_by_key(|&k| self.rank[k])
            .expect("Δ is a common multiple")
    }

    /// Least common left multiple of two simples with the same target.
    pub fn left_join(&self, s: usize, t: usize) -> usize {
        (0..self.words.len())
            .filter(|&k| self.rquot[k][s].is_some() && self.rquot[k][t].is_some())
            .min_by_key(|&k| self.rank[k])
            .expect("Δ is a common left multiple")
    }

    /// ∂ on a word; fails unless the word is a simple.
    pub fn complement_word(&self, w: &Word) -> Result<Word> {
        let s = self
            .simple_of(w)
            .ok_or_else(|| Error::NotADivisor(format!("{:?}", w.letters)))?;
        Ok(self.words[self.comp[s]].clone())
    }

    /// φ extended multiplicatively to positive words.
    pub fn phi_word(&self, w: &Word) -> Word {
        let mut out = Word::empty(self.phi_obj[w.source.0]);
        for &g in &w.letters {
            for &f in &self.gen_factors[g] {
                out = out
                    .concat(&self.words[self.phi[f]])
                    .expect("φ is a functor");
            }
        }
        out
    }

    /// Left-weights the pair `(s, t)`: the result `(s', t')` has `s·t = s'·t'`
    /// and `s'` the head of the product.
    pub fn left_weight(&self, s: usize, t: usize) -> (usize, usize) {
        let c = self.meet(self.comp[s], t);
        if self.is_identity(c) {
            return (s, t);
        }
        let s2 = self.mul[s][c].expect("s·c divides Δ");
        let t2 = self.quot[c][t].expect("c divides t");
        (s2, t2)
    }

    fn renormalize(&self, mut m: i64, mut seq: Vec<usize>, source: ObjectId) -> DeltaNormal {
        seq.retain(|&s| !self.is_identity(s));
        loop {
            let mut changed = false;
            for i in 0..seq.len().saturating_sub(1) {
                let (a, b) = self.left_weight(seq[i], seq[i + 1]);
                if (a, b) != (seq[i], seq[i + 1]) {
                    seq[i] = a;
                    seq[i + 1] = b;
                    changed = true;
                }
            }
            if seq.iter().any(|&s| self.is_identity(s)) {
                seq.retain(|&s| !self.is_identity(s));
                changed = true;
            }
            if !changed {
                break;
            }
        }
        let lead = seq.iter().take_while(|&&s| self.is_delta(s)).count();
        m += lead as i64;
        seq.drain(..lead);
        DeltaNormal {
            m,
            factors: seq,
            source,
        }
    }

    pub fn identity_normal(&self, x: ObjectId) -> DeltaNormal {
        DeltaNormal {
            m: 0,
            factors: Vec::new(),
            source: x,
        }
    }

    pub fn delta_power(&self, x: ObjectId, m: i64) -> DeltaNormal {
        DeltaNormal {
            m,
            factors: Vec::new(),
            source: x,
        }
    }

    pub fn simple_normal(&self, s: usize) -> DeltaNormal {
        self.renormalize(0, vec![s], self.source[s])
    }

    /// `s⁻¹ = Δ⁻¹·y` where `y·s = Δ`.
    pub fn simple_inverse(&self, s: usize) -> DeltaNormal {
        self.renormalize(-1, vec![self.comp_inv[s]], self.target[s])
    }

    /// Target object of the element.
    pub fn normal_target(&self, d: &DeltaNormal) -> ObjectId {
        match d.factors.last() {
            Some(&s) => self.target[s],
            None => self.phi_object(d.source, d.m),
        }
    }

    pub fn multiply(&self, a: &DeltaNormal, b: &DeltaNormal) -> Result<DeltaNormal> {
        if self.normal_target(a) != b.source {
            return Err(Error::Composition("elements do not compose".into()));
        }
        let mut seq: Vec<usize> = a.factors.iter().map(|&s| self.phi_pow(s, b.m)).collect();
        seq.extend_from_slice(&b.factors);
        Ok(self.renormalize(a.m + b.m, seq, a.source))
    }

    pub fn inverse(&self, d: &DeltaNormal) -> DeltaNormal {
        let t = self.normal_target(d);
        let mut acc = self.identity_normal(t);
        for &s in d.factors.iter().rev() {
            acc = self
                .multiply(&acc, &self.simple_inverse(s))
                .expect("factors compose");
        }
        let tail = self.delta_power(self.normal_target(&acc), -d.m);
        self.multiply(&acc, &tail).expect("Δ-power composes")
    }

    /// φ^k applied to an element.
    pub fn phi_normal(&self, d: &DeltaNormal, k: i64) -> DeltaNormal {
        DeltaNormal {
            m: d.m,
            factors: d.factors.iter().map(|&s| self.phi_pow(s, k)).collect(),
            source: self.phi_object(d.source, k),
        }
    }

    /// Δ-normal form of a signed word, processed letter by letter.
    pub fn delta_normalize(&self, w: &SignedWord) -> Result<DeltaNormal> {
        let mut acc = self.identity_normal(w.source);
        for &(g, sign) in &w.letters {
            let factors = &self.gen_factors[g];
            match sign {
                Sign::Pos => {
                    for &f in factors {
                        acc = self.multiply(&acc, &self.simple_normal(f))?;
                    }
                }
                Sign::Neg => {
                    for &f in factors.iter().rev() {
                        acc = self.multiply(&acc, &self.simple_inverse(f))?;
                    }
                }
            }
        }
        Ok(acc)
    }

    pub fn normal_of_word(&self, w: &Word) -> DeltaNormal {
        self.delta_normalize(&w.to_signed())
            .expect("positive words compose")
    }

    /// Greedy factors of a positive element: `m` copies of Δ then the
    /// factors. `None` when `m < 0`.
    pub fn greedy_factors(&self, d: &DeltaNormal) -> Option<Vec<usize>> {
        if d.m < 0 {
            return None;
        }
        let mut out = Vec::new();
        let mut x = d.source;
        for _ in 0..d.m {
            out.push(self.delta[x.0]);
            x = self.phi_obj[x.0];
        }
        out.extend_from_slice(&d.factors);
        Some(out)
    }

    pub fn to_word(&self, d: &DeltaNormal) -> Option<Word> {
        let mut w = Word::empty(d.source);
        for s in self.greedy_factors(d)? {
            w = w.concat(&self.words[s]).expect("factors compose");
        }
        Some(w)
    }

    pub fn to_signed_word(&self, d: &DeltaNormal) -> SignedWord {
        let mut w = SignedWord::empty(d.source);
        let mut x = d.source;
        for _ in 0..d.m.max(0) {
            w = w
                .concat(&self.words[self.delta[x.0]].to_signed())
                .expect("Δ-powers compose");
            x = self.phi_obj[x.0];
        }
        for _ in 0..(-d.m).max(0) {
            let y = self.phi_obj_inv[x.0];
            w = w
                .concat(&self.words[self.delta[y.0]].inverse())
                .expect("Δ-powers compose");
            x = y;
        }
        for &s in &d.factors {
            w = w
                .concat(&self.words[s].to_signed())
                .expect("factors compose");
        }
        w
    }

    /// `D^m . x1 . x2`; `D^0` is dropped when there are factors.
    pub fn display(&self, d: &DeltaNormal) -> String {
        let mut parts = Vec::new();
        if d.m != 0 || d.factors.is_empty() {
            parts.push(format!("D^{}", d.m));
        }
        parts.extend(d.factors.iter().map(|&s| self.labels[s].clone()));
        parts.join(" . ")
    }

    /// Greedy display `aba.b`, or `1` for the identity. Negative elements
    /// fall back to the Δ-normal display.
    pub fn display_greedy(&self, d: &DeltaNormal) -> String {
        match self.greedy_factors(d) {
            Some(f) if f.is_empty() => "1".into(),
            Some(f) => f
                .iter()
                .map(|&s| self.labels[s].as_str())
                .collect::<Vec<_>>()
                .join("."),
            None => self.display(d),
        }
    }

    fn head(&self, d: &DeltaNormal) -> usize {
        if d.m > 0 {
            self.delta[d.source.0]
        } else {
            d.factors
                .first()
                .copied()
                .unwrap_or(self.identity[d.source.0])
        }
    }

    /// Greatest common left divisor of two positive words.
    pub fn gcd(&self, u: &Word, v: &Word) -> Result<Word> {
        if u.source != v.source {
            return Err(Error::Composition(
                "gcd of words with different sources".into(),
            ));
        }
        let mut a = self.normal_of_word(u);
        let mut b = self.normal_of_word(v);
        let mut out = Word::empty(u.source);
        loop {
            let h = self.meet(self.head(&a), self.head(&b));
            if self.is_identity(h) {
                return Ok(out);
            }
            out = out.concat(&self.words[h])?;
            let hi = self.simple_inverse(h);
            a = self.multiply(&hi, &a)?;
            b = self.multiply(&hi, &b)?;
        }
    }

    /// Right complements of simple sequences: `(u\v, v\u)`.
    fn complement_seq(&self, u: &[usize], v: &[usize], left: bool) -> (Vec<usize>, Vec<usize>) {
        if u.is_empty() {
            return (v.to_vec(), Vec::new());
        }
        if v.is_empty() {
            return (Vec::new(), u.to_vec());
        }
        if u.len() == 1 && v.len() == 1 {
            let (s, t) = (u[0], v[0]);
            let (a, b) = if left {
                let j = self.left_join(s, t);
                (self.rquot[j][s].unwrap(), self.rquot[j][t].unwrap())
            } else {
                let j = self.join(s, t);
                (self.quot[s][j].unwrap(), self.quot[t][j].unwrap())
            };
            let keep = |x: usize| {
                if self.is_identity(x) {
                    Vec::new()
                } else {
                    vec![x]
                }
            };
            return (keep(a), keep(b));
        }
        if u.len() > 1 {
            let (a, b) = self.complement_seq(&u[..1], v, left);
            let (c, d) = self.complement_seq(&u[1..], &a, left);
            (c, [b, d].concat())
        } else {
            let (a, b) = self.complement_seq(u, &v[..1], left);
            let (c, d) = self.complement_seq(&b, &v[1..], left);
            ([a, c].concat(), d)
        }
    }

    fn positive_seq(&self, w: &Word) -> Vec<usize> {
        self.greedy_factors(&self.normal_of_word(w))
            .expect("positive word")
    }

    /// Least common right multiple of two positive words.
    pub fn right_lcm(&self, u: &Word, v: &Word) -> Result<Word> {
        if u.source != v.source {
            return Err(Error::Composition(
                "lcm of words with different sources".into(),
            ));
        }
        let (uv, _) = self.complement_seq(&self.positive_seq(u), &self.positive_seq(v), false);
        let mut out = u.clone();
        for s in uv {
            out = out.concat(&self.words[s])?;
        }
        Ok(out)
    }

    /// Least common left multiple of two positive words.
    pub fn left_lcm(&self, u: &Word, v: &Word) -> Result<Word> {
        if u.target != v.target {
            return Err(Error::Composition(
                "left lcm of words with different targets".into(),
            ));
        }
        let mut us = self.positive_seq(u);
        let mut vs = self.positive_seq(v);
        us.reverse();
        vs.reverse();
        let (mut vu, _) = self.complement_seq(&us, &vs, true);
        vu.reverse();
        let mut out = Word::empty(vu.first().map_or(u.source, |&s| self.source[s]));
        for s in vu {
            out = out.concat(&self.words[s])?;
        }
        out.concat(u)
    }
}

fn invert(f: &[usize], what: &str) -> Result<Vec<usize>> {
    let mut inv = vec![usize::MAX; f.len()];
    for (i, &y) in f.iter().enumerate() {
        if inv[y] != usize::MAX {
            return Err(Error::Validation(format!("{what} is not a bijection")));
        }
        inv[y] = i;
    }
    Ok(inv)
}

fn longest_paths(succ: &[Vec<Option<usize>>], identity: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for row in succ {
        for &t in row.iter().flatten() {
            indeg[t] += 1;
        }
    }
    let mut rank = vec![0usize; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = queue.pop_front() {
        seen += 1;
        for &t in succ[i].iter().flatten() {
            rank[t] = rank[t].max(rank[i] + 1);
            indeg[t] -= 1;
            if indeg[t] == 0 {
                queue.push_back(t);
            }
        }
    }
    if seen != n || identity.iter().any(|&i| rank[i] != 0) {
        return Err(Error::Validation("the divisor graph has a cycle".into()));
    }
    Ok(rank)
}

/// Simple factors of each generator. Generators that are not simple are
/// split by repeated extraction of their greatest simple divisor.
fn generator_factors(ctx: &CategoryContext, map: &GarsideMap) -> Result<Vec<Vec<usize>>> {
    let p: &Presentation = ctx.presentation();
    let mut out = Vec::new();
    for g in p.generators() {
        let gw = p.word(&[g.id])?;
        if let Some(s) = map.simple_of(&gw) {
            out.push(vec![s]);
            continue;
        }
        let mut rest = gw;
        let mut factors = Vec::new();
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for s in map.divisors(rest.source) {
                if !map.is_identity(s)
                    && best.is_none_or(|b| map.rank[s] > map.rank[b])
                    && ctx.left_divides(&map.words[s], &rest)?
                {
                    best = Some(s);
                }
            }
            let s = best.ok_or_else(|| {
                Error::Validation(format!("generator {} has no simple divisor", g.name))
            })?;
            rest = ctx.left_quotient(&map.words[s], &rest)?.expect("divisor");
            factors.push(s);
        }
        out.push(factors);
    }
    Ok(out)
}

/// `Δ^m·x₁⋯x_k` with `x₁⋯x_k` normal and no factor equal to Δ or an identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaNormal {
    pub m: i64,
    pub factors: Vec<usize>,
    pub source: ObjectId,
}

impl DeltaNormal {
    pub fn inf(&self) -> i64 {
        self.m
    }

    pub fn sup(&self) -> i64 {
        self.m + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for UnboundedCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "object {}: {}", self.object.0, self.reason)
    }
}
