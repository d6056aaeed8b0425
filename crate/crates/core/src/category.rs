//! The category context: a presentation together with equality and
//! divisibility oracles.
//!
//! When the presentation is complemented and passes the cube condition the
//! oracles run on right-reversing. Otherwise they fall back to a bounded
//! breadth-first closure under relation applications, which answers
//! `Inconclusive` rather than guessing once its budget is spent.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::reversing::{self, default_fuel, extract_complement, Complement, CubeVerdict, Reversal};
use crate::word::{mirror_signed, GenId, ObjectId, Presentation, SignedWord, Word};

/// Search bounds shared by every query on a context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Reversing fuel is `fuel_factor · L²` cells for an input of length `L`.
    pub fuel_factor: usize,
    /// Closure search depth is the word length plus this many applications.
    pub closure_extra_depth: usize,
    pub closure_node_budget: usize,
    pub cube_depth: usize,
    /// Node budget for conjugacy searches.
    pub node_budget: usize,
    /// Bound on divisor enumerations (Garside map construction).
    pub divisor_budget: usize,
    /// Divisor enumeration bound in non-Noetherian contexts, where each new
    /// divisor is compared against all earlier ones.
    pub probe_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            fuel_factor: 16,
            closure_extra_depth: 8,
            closure_node_budget: 200_000,
            cube_depth: 1,
            node_budget: 100_000,
            divisor_budget: 10_000,
            probe_budget: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Reversing,
    Closure,
}

#[derive(Debug)]
pub struct CategoryContext {
    presentation: Presentation,
    complement: Option<Complement>,
    cube: Option<CubeVerdict>,
    mirror_complement: Option<Complement>,
    weights: Option<Vec<u32>>,
    limits: Limits,
    canon: Mutex<HashMap<(ObjectId, Vec<GenId>), Vec<GenId>>>,
}

impl Clone for CategoryContext {
    fn clone(&self) -> Self {
        CategoryContext {
            presentation: self.presentation.clone(),
            complement: self.complement.clone(),
            cube: self.cube.clone(),
            mirror_complement: self.mirror_complement.clone(),
            weights: self.weights.clone(),
            limits: self.limits,
            canon: Mutex::new(HashMap::new()),
        }
    }
}

impl CategoryContext {
    pub fn new(presentation: Presentation) -> Self {
        Self::with_limits(presentation, Limits::default())
    }

    /// Length-homogeneous presentations are flagged Noetherian with unit
    /// weights; others need [`CategoryContext::with_weights`].
    pub fn with_limits(presentation: Presentation, limits: Limits) -> Self {
        let complement = extract_complement(&presentation).ok();
        let cube = complement.as_ref().map(|c| {
            reversing::check_cube_condition_with(c, limits.cube_depth, limits.fuel_factor)
        });
        let mirror_complement = match &cube {
            Some(CubeVerdict::Complete) => {
                let m = presentation.mirror();
                extract_complement(&m).ok().filter(|c| {
                    reversing::check_cube_condition_with(c, limits.cube_depth, limits.fuel_factor)
                        .is_complete()
                })
            }
            _ => None,
        };
        let weights = presentation
            .is_homogeneous()
            .then(|| vec![1; presentation.generators().len()]);
        CategoryContext {
            presentation,
            complement,
            cube,
            mirror_complement,
            weights,
            limits,
            canon: Mutex::new(HashMap::new()),
        }
    }

    /// Declares positive generator weights that balance every relation,
    /// which certifies Noetherianity.
    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != self.presentation.generators().len() || weights.contains(&0) {
            return Err(Error::Validation(
                "weights must be positive, one per generator".into(),
            ));
        }
        let weigh = |w: &Word| w.letters.iter().map(|&g| weights[g] as u64).sum::<u64>();
        if self
            .presentation
            .relations()
            .iter()
            .any(|(l, r)| weigh(l) != weigh(r))
        {
            return Err(Error::Validation(
                "weights do not balance the relations".into(),
            ));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn complement(&self) -> Option<&Complement> {
        self.complement.as_ref()
    }

    pub fn cube_verdict(&self) -> Option<&CubeVerdict> {
        self.cube.as_ref()
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.cube, Some(CubeVerdict::Complete))
    }

    pub fn is_noetherian(&self) -> bool {
        self.weights.is_some()
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn strategy(&self) -> Strategy {
        if self.is_complete() {
            Strategy::Reversing
        } else {
            Strategy::Closure
        }
    }

    pub(crate) fn complete_complement(&self) -> Result<&Complement> {
        match (&self.complement, self.is_complete()) {
            (Some(c), true) => Ok(c),
            _ => Err(Error::Unsupported(
                "no complete complement for this presentation".into(),
            )),
        }
    }

    pub(crate) fn fuel_for(&self, len: usize) -> usize {
        default_fuel(len, self.limits.fuel_factor)
    }

    pub fn weight(&self, w: &Word) -> Option<u64> {
        self.weights
            .as_ref()
            .map(|ws| w.letters.iter().map(|&g| ws[g] as u64).sum())
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        self.presentation.parse_word(text)
    }

    pub fn identity(&self, object: ObjectId) -> Word {
        Word::empty(object)
    }

    /// `u ≡ v` in the presented category.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        if u.source != v.source || u.target != v.target {
            return Ok(false);
        }
        if u.letters == v.letters {
            return Ok(true);
        }
        match self.strategy() {
            Strategy::Reversing => reversing::word_equal_via_reversing(self, u, v),
            Strategy::Closure => {
                let cu = self.closure(u)?;
                if cu.words.contains(&v.letters) {
                    Ok(true)
                } else if cu.saturated {
                    Ok(false)
                } else {
                    Err(Error::Inconclusive(
                        "rewriting closure budget exhausted".into(),
                    ))
                }
            }
        }
    }

    /// Returns `w` with `u·w ≡ v`, or `None` when `u` does not left-divide `v`.
    pub fn left_quotient(&self, u: &Word, v: &Word) -> Result<Option<Word>> {
        if u.source != v.source {
            return Ok(None);
        }
        if u.is_empty() {
            return Ok(Some(v.clone()));
        }
        match self.strategy() {
            Strategy::Reversing => {
                let comp = self.complete_complement()?;
                match comp.complement_words(
                    &u.letters,
                    &v.letters,
                    self.fuel_for(u.len() + v.len()),
                ) {
                    Reversal::Reversed { pos, neg, .. } => {
                        if neg.is_empty() {
                            Ok(Some(self.presentation.word_from(u.target, &pos)?))
                        } else {
                            Ok(None)
                        }
                    }
                    Reversal::Stuck { .. } => Ok(None),
                    Reversal::Diverged { cells } => Err(Error::Inconclusive(format!(
                        "reversing diverged after {cells} cells"
                    ))),
                }
            }
            Strategy::Closure => {
                let cu = self.closure(u)?;
                let cv = self.closure(v)?;
                let mut by_len: HashMap<usize, Vec<&Vec<GenId>>> = HashMap::new();
                for w in &cu.words {
                    by_len.entry(w.len()).or_default().push(w);
                }
                let mut found: Option<Vec<GenId>> = None;
                for w in &cv.words {
                    for (len, us) in &by_len {
                        if *len <= w.len() && us.iter().any(|x| x[..] == w[..*len]) {
                            let rest = w[*len..].to_vec();
                            if found.as_ref().is_none_or(|f| rest < *f) {
                                found = Some(rest);
                            }
                        }
                    }
                }
                match found {
                    Some(rest) => Ok(Some(self.presentation.word_from(u.target, &rest)?)),
                    None if cu.saturated && cv.saturated => Ok(None),
                    None => Err(Error::Inconclusive(
                        "rewriting closure budget exhausted".into(),
                    )),
                }
            }
        }
    }

    pub fn left_divides(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.left_quotient(u, v)?.is_some())
    }

    /// Right-divisibility, `u` divides `v` on the right.
    pub fn right_divides(&self, u: &Word, v: &Word) -> Result<bool> {
        if u.target != v.target {
            return Ok(false);
        }
        if u.is_empty() {
            return Ok(true);
        }
        match &self.mirror_complement {
            Some(mc) => {
                let mu: Vec<GenId> = u.letters.iter().rev().copied().collect();
                let mv: Vec<GenId> = v.letters.iter().rev().copied().collect();
                match mc.complement_words(&mu, &mv, self.fuel_for(u.len() + v.len())) {
                    Reversal::Reversed { neg, .. } => Ok(neg.is_empty()),
                    Reversal::Stuck { .. } => Ok(false),
                    Reversal::Diverged { cells } => Err(Error::Inconclusive(format!(
                        "reversing diverged after {cells} cells"
                    ))),
                }
            }
            None => {
                let cu = self.closure(u)?;
                let cv = self.closure(v)?;
                let hit = cv.words.iter().any(|w| {
                    cu.words
                        .iter()
                        .any(|x| x.len() <= w.len() && w.ends_with(x))
                });
                if hit {
                    Ok(true)
                } else if cu.saturated && cv.saturated {
                    Ok(false)
                } else {
                    Err(Error::Inconclusive(
                        "rewriting closure budget exhausted".into(),
                    ))
                }
            }
        }
    }

    /// Left-reversing `w` into a left fraction `(N, P)` with `w ≡ N⁻¹·P`.
    pub fn left_fraction(&self, w: &SignedWord) -> Result<(Word, Word)> {
        let mc = self.mirror_complement.as_ref().ok_or_else(|| {
            Error::Unsupported("no complete complement for the opposite presentation".into())
        })?;
        let m = mirror_signed(w);
        match reversing::reverse(mc, &m, self.fuel_for(w.len())) {
            reversing::ReverseOutcome::Reversed { pos, neg, .. } => {
                // Mirror of pos·neg⁻¹ is rev(neg)⁻¹·rev(pos).
                let den: Vec<GenId> = neg.letters.iter().rev().copied().collect();
                let num: Vec<GenId> = pos.letters.iter().rev().copied().collect();
                let obj = pos.target;
                Ok((
                    self.presentation.word_from(obj, &den)?,
                    self.presentation.word_from(obj, &num)?,
                ))
            }
            reversing::ReverseOutcome::Stuck { .. } => Err(Error::NoCommonMultiple),
            reversing::ReverseOutcome::Diverged { cells } => Err(Error::Inconclusive(format!(
                "left reversing diverged after {cells} cells"
            ))),
        }
    }

    /// Right fraction `(P, N)` with `w ≡ P·N⁻¹`.
    pub fn right_fraction(&self, w: &SignedWord) -> Result<(Word, Word)> {
        let comp = self.complete_complement()?;
        match reversing::reverse(comp, w, self.fuel_for(w.len())) {
            reversing::ReverseOutcome::Reversed { pos, neg, .. } => Ok((pos, neg)),
            reversing::ReverseOutcome::Stuck { .. } => Err(Error::NoCommonMultiple),
            reversing::ReverseOutcome::Diverged { cells } => Err(Error::Inconclusive(format!(
                "reversing diverged after {cells} cells"
            ))),
        }
    }

    /// Equality of two signed words in the enveloping groupoid.
    pub fn groupoid_equal(&self, u: &SignedWord, v: &SignedWord) -> Result<bool> {
        if u.source != v.source || u.target != v.target {
            return Ok(false);
        }
        let (p, n) = self.right_fraction(&u.inverse().concat(v)?)?;
        self.equal(&p, &n)
    }

    /// Lexicographically least word representing `w` (generator ids
    /// ordered by index). Requires a Noetherian context.
    pub fn canonical(&self, w: &Word) -> Result<Word> {
        if !self.is_noetherian() {
            return Err(Error::Unsupported(
                "canonical words need a Noetherian context".into(),
            ));
        }
        let key = (w.source, w.letters.clone());
        if let Some(hit) = self.canon.lock().unwrap().get(&key) {
            return self.presentation.word_from(w.source, hit);
        }
        let mut out = Vec::new();
        let mut rest = w.clone();
        while !rest.is_empty() {
            let mut step = None;
            for g in self
                .presentation
                .generators()
                .iter()
                .filter(|g| g.source == rest.source)
            {
                let gw = self.presentation.word(&[g.id])?;
                if let Some(q) = self.left_quotient(&gw, &rest)? {
                    step = Some((g.id, q));
                    break;
                }
            }
            let (g, q) = step.ok_or_else(|| {
                Error::Validation("nonempty word with no generator divisor".into())
            })?;
            out.push(g);
            rest = q;
        }
        self.canon.lock().unwrap().insert(key, out.clone());
        self.presentation.word_from(w.source, &out)
    }

    /// Elements with no proper nontrivial left divisor.
    pub fn atoms(&self) -> Result<Vec<Word>> {
        if !self.is_noetherian() {
            return Err(Error::Unsupported("atoms need a Noetherian context".into()));
        }
        let mut out: Vec<Word> = Vec::new();
        for g in self.presentation.generators() {
            let w = self.presentation.word(&[g.id])?;
            if self.height(&w)? == 1 {
                let mut dup = false;
                for a in &out {
                    if self.equal(a, &w)? {
                        dup = true;
                        break;
                    }
                }
                if !dup {
                    out.push(w);
                }
            }
        }
        Ok(out)
    }

    /// Maximal length of a decomposition into nontrivial elements.
    pub fn height(&self, g: &Word) -> Result<usize> {
        if !self.is_noetherian() {
            return Err(Error::Unsupported(
                "height needs a Noetherian context".into(),
            ));
        }
        let mut memo = HashMap::new();
        self.height_memo(g, &mut memo)
    }

    fn height_memo(
        &self,
        g: &Word,
        memo: &mut HashMap<(ObjectId, Vec<GenId>), usize>,
    ) -> Result<usize> {
        if g.is_empty() {
            return Ok(0);
        }
        let key = (g.source, self.canonical(g)?.letters);
        if let Some(&h) = memo.get(&key) {
            return Ok(h);
        }
        let mut best = 0;
        for s in self
            .presentation
            .generators()
            .iter()
            .filter(|s| s.source == g.source)
        {
            let sw = self.presentation.word(&[s.id])?;
            if let Some(q) = self.left_quotient(&sw, g)? {
                best = best.max(1 + self.height_memo(&q, memo)?);
            }
        }
        memo.insert(key, best);
        Ok(best)
    }

    /// All left divisors of `g`, grown from the identity by right
    /// multiplication with generators. Fails with `ExplosionGuard` past
    /// `budget` elements.
    pub fn left_divisors(&self, g: &Word, budget: usize) -> Result<Vec<Word>> {
        let mut found: Vec<Word> = vec![Word::empty(g.source)];
        let mut keys: HashSet<Vec<GenId>> = HashSet::new();
        keys.insert(Vec::new());
        let mut i = 0;
        while i < found.len() {
            let d = found[i].clone();
            i += 1;
            for s in self
                .presentation
                .generators()
                .iter()
                .filter(|s| s.source == d.target)
            {
                let ds = d.concat(&self.presentation.word(&[s.id])?)?;
                if !self.left_divides(&ds, g)? {
                    continue;
                }
                let fresh = if self.is_noetherian() {
                    let c = self.canonical(&ds)?;
                    if keys.insert(c.letters.clone()) {
                        Some(c)
                    } else {
                        None
                    }
                } else {
                    let mut dup = false;
                    for f in &found {
                        if self.equal(f, &ds)? {
                            dup = true;
                            break;
                        }
                    }
                    (!dup).then_some(ds)
                };
                if let Some(c) = fresh {
                    if found.len() >= budget {
                        return Err(Error::ExplosionGuard { budget });
                    }
                    found.push(c);
                }
            }
        }
        Ok(found)
    }

    /// Words reachable from `w` by relation applications in both directions,
    /// up to `|w| + closure_extra_depth` applications.
    pub fn closure(&self, w: &Word) -> Result<Closure> {
        closure_of(
            &self.presentation,
            &w.letters,
            w.len() + self.limits.closure_extra_depth,
            self.limits.closure_node_budget,
        )
    }
}

#[derive(Debug, Clone)]
pub struct Closure {
    pub words: HashSet<Vec<GenId>>,
    /// True when the search exhausted the class before hitting a bound.
    pub saturated: bool,
}

pub(crate) fn closure_of(
    p: &Presentation,
    start: &[GenId],
    depth: usize,
    budget: usize,
) -> Result<Closure> {
    let rules: Vec<(&[GenId], &[GenId])> = p
        .relations()
        .iter()
        .flat_map(|(l, r)| {
            [
                (&l.letters[..], &r.letters[..]),
                (&r.letters[..], &l.letters[..]),
            ]
        })
        .collect();
    let mut seen: HashSet<Vec<GenId>> = HashSet::new();
    seen.insert(start.to_vec());
    let mut queue: VecDeque<(Vec<GenId>, usize)> = VecDeque::new();
    queue.push_back((start.to_vec(), 0));
    let mut saturated = true;
    while let Some((w, d)) = queue.pop_front() {
        for &(from, to) in &rules {
            if from.len() > w.len() {
                continue;
            }
            for i in 0..=w.len() - from.len() {
                if w[i..i + from.len()] != *from {
                    continue;
                }
                let mut x = Vec::with_capacity(w.len() - from.len() + to.len());
                x.extend_from_slice(&w[..i]);
                x.extend_from_slice(to);
                x.extend_from_slice(&w[i + from.len()..]);
                if seen.contains(&x) {
                    continue;
                }
                if d >= depth {
                    saturated = false;
                    continue;
                }
                if seen.len() >= budget {
                    return Ok(Closure {
                        words: seen,
                        saturated: false,
                    });
                }
                seen.insert(x.clone());
                queue.push_back((x, d + 1));
            }
        }
    }
    Ok(Closure {
        words: seen,
        saturated,
    })
}

/// Distinct elements among `words`, as canonical representatives.
pub fn distinct_elements(ctx: &CategoryContext, words: &[Word]) -> Result<Vec<Word>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for w in words {
        let c = ctx.canonical(w)?;
        if seen.insert((c.source, c.letters.clone())) {
            out.push(c);
        }
    }
    Ok(out)
}
