//! Right-reversing for complemented presentations.
//!
//! A complement assigns to each pair of generators `(s, t)` with a common
//! source a positive word `s\t` such that `s·(s\t) = t·(t\s)` is a relation
//! (or `s = t`, in which case both sides are empty). Reversing rewrites every
//! pattern `s⁻¹t` into `(s\t)(t\s)⁻¹` until the word has the form `P·N⁻¹`.

use std::fmt;

use crate::category::CategoryContext;
use crate::error::{Error, Result};
use crate::word::{GenId, ObjectId, Presentation, Sign, SignedWord, Word};

/// Partial complement table, dense in the generator ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complement {
    n: usize,
    table: Vec<Option<Vec<GenId>>>,
    ends: Vec<(ObjectId, ObjectId)>,
}

impl Complement {
    /// Complement with only the diagonal entries `s\s = ε`.
    pub fn diagonal(p: &Presentation) -> Self {
        let n = p.generators().len();
        let mut table = vec![None; n * n];
        for s in 0..n {
            table[s * n + s] = Some(Vec::new());
        }
        let ends = p
            .generators()
            .iter()
            .map(|g| (g.source, g.target))
            .collect();
        Complement { n, table, ends }
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: GenId, t: GenId) -> Option<&[GenId]> {
        self.table[s * self.n + t].as_deref()
    }

    /// Sets `s\t = st` and `t\s = ts`. Both cells must be empty.
    pub fn set_pair(&mut self, s: GenId, t: GenId, st: Vec<GenId>, ts: Vec<GenId>) -> Result<()> {
        if s == t {
            return Err(Error::NotComplemented(format!(
                "relation with identical head letters (generator {s})"
            )));
        }
        if self.ends[s].0 != self.ends[t].0 {
            return Err(Error::Composition(
                "complement pair without common source".into(),
            ));
        }
        let n = self.n;
        if self.table[s * n + t].is_some() || self.table[t * n + s].is_some() {
            return Err(Error::NotComplemented(format!(
                "two relations share the head pair ({s}, {t})"
            )));
        }
        self.table[s * n + t] = Some(st);
        self.table[t * n + s] = Some(ts);
        Ok(())
    }

    fn target_of(&self, start: ObjectId, letters: &[GenId]) -> ObjectId {
        letters.last().map(|&g| self.ends[g].1).unwrap_or(start)
    }

    /// Reverses `u⁻¹v` for positive `u`, `v` and returns `(v', u')` with
    /// `u·v' = v·u'`.
    pub fn complement_words(&self, u: &[GenId], v: &[GenId], fuel: usize) -> Reversal {
        let mut run = Run {
            comp: self,
            fuel,
            used: 0,
            cells: None,
        };
        match run.words(u, v) {
            Ok((pos, neg)) => Reversal::Reversed {
                pos,
                neg,
                cells: run.used,
            },
            Err(stop) => stop.into_reversal(run.used),
        }
    }
}

/// Outcome of reversing on letter sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reversal {
    Reversed {
        pos: Vec<GenId>,
        neg: Vec<GenId>,
        cells: usize,
    },
    /// An undefined complement entry `(s, t)` was needed.
    Stuck { pair: (GenId, GenId) },
    /// Fuel ran out after the given number of cells.
    Diverged { cells: usize },
}

/// One elementary step `s⁻¹t → (s\t)(t\s)⁻¹` of a reversing diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub left: GenId,
    pub right: GenId,
    pub right_out: Vec<GenId>,
    pub left_out: Vec<GenId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversingGrid {
    pub input: SignedWord,
    pub pos: Word,
    pub neg: Word,
    pub cells: Vec<Cell>,
}

impl ReversingGrid {
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReverseOutcome {
    /// `input ≡ pos·neg⁻¹` and the output has no `−+` pattern left.
    Reversed {
        pos: Word,
        neg: Word,
        grid: ReversingGrid,
    },
    Stuck {
        pair: (GenId, GenId),
    },
    Diverged {
        cells: usize,
    },
}

enum Stop {
    Stuck(GenId, GenId),
    Diverged,
}

impl Stop {
    fn into_reversal(self, used: usize) -> Reversal {
        match self {
            Stop::Stuck(s, t) => Reversal::Stuck { pair: (s, t) },
            Stop::Diverged => Reversal::Diverged { cells: used },
        }
    }
}

struct Run<'a> {
    comp: &'a Complement,
    fuel: usize,
    used: usize,
    cells: Option<Vec<Cell>>,
}

impl Run<'_> {
    fn letter(&mut self, s: GenId, t: GenId) -> Result<(Vec<GenId>, Vec<GenId>), Stop> {
        if self.used >= self.fuel {
            return Err(Stop::Diverged);
        }
        self.used += 1;
        let st = self.comp.get(s, t).ok_or(Stop::Stuck(s, t))?.to_vec();
        let ts = self.comp.get(t, s).ok_or(Stop::Stuck(t, s))?.to_vec();
        if let Some(cells) = self.cells.as_mut() {
            cells.push(Cell {
                left: s,
                right: t,
                right_out: st.clone(),
                left_out: ts.clone(),
            });
        }
        Ok((st, ts))
    }

    fn words(&mut self, u: &[GenId], v: &[GenId]) -> Result<(Vec<GenId>, Vec<GenId>), Stop> {
        if u.is_empty() {
            return Ok((v.to_vec(), Vec::new()));
        }
        if v.is_empty() {
            return Ok((Vec::new(), u.to_vec()));
        }
        if u.len() == 1 && v.len() == 1 {
            return self.letter(u[0], v[0]);
        }
        if u.len() > 1 {
            // u = u1·u2: reverse u1⁻¹v first, then u2⁻¹ against the result.
            let (v1, mut u1p) = self.words(&u[..1], v)?;
            let (v2, u2p) = self.words(&u[1..], &v1)?;
            u1p.extend(u2p);
            Ok((v2, u1p))
        } else {
            let (mut a, s1) = self.words(u, &v[..1])?;
            let (b, s2) = self.words(&s1, &v[1..])?;
            a.extend(b);
            Ok((a, s2))
        }
    }
}

/// Default fuel for an input of length `len`.
pub fn default_fuel(len: usize, factor: usize) -> usize {
    let l = len.max(1);
    (factor * l * l).max(16)
}

/// Right-reverses a signed word.
pub fn reverse(comp: &Complement, w: &SignedWord, fuel: usize) -> ReverseOutcome {
    let mut run = Run {
        comp,
        fuel,
        used: 0,
        cells: Some(Vec::new()),
    };
    let mut pos: Vec<GenId> = Vec::new();
    // Value so far is pos·neg⁻¹.
    let mut neg: Vec<GenId> = Vec::new();
    let mut i = 0;
    let letters = &w.letters;
    while i < letters.len() {
        let sign = letters[i].1;
        let mut j = i;
        while j < letters.len() && letters[j].1 == sign {
            j += 1;
        }
        let block: Vec<GenId> = letters[i..j].iter().map(|&(g, _)| g).collect();
        match sign {
            Sign::Pos => match run.words(&neg, &block) {
                Ok((p, n)) => {
                    pos.extend(p);
                    neg = n;
                }
                Err(stop) => return into_outcome(stop, run.used),
            },
            Sign::Neg => {
                // neg⁻¹·(b1⁻¹…bk⁻¹) = (bk…b1·neg)⁻¹
                let mut new_neg: Vec<GenId> = block.into_iter().rev().collect();
                new_neg.extend(neg);
                neg = new_neg;
            }
        }
        i = j;
    }
    let end = comp.target_of(w.source, &pos);
    let pos = Word {
        letters: pos,
        source: w.source,
        target: end,
    };
    let neg = Word {
        letters: neg,
        source: w.target,
        target: end,
    };
    let grid = ReversingGrid {
        input: w.clone(),
        pos: pos.clone(),
        neg: neg.clone(),
        cells: run.cells.unwrap_or_default(),
    };
    ReverseOutcome::Reversed { pos, neg, grid }
}

fn into_outcome(stop: Stop, used: usize) -> ReverseOutcome {
    match stop {
        Stop::Stuck(s, t) => ReverseOutcome::Stuck { pair: (s, t) },
        Stop::Diverged => ReverseOutcome::Diverged { cells: used },
    }
}

/// Reads complement entries off relations of the form `s·u = t·v`.
pub fn extract_complement(p: &Presentation) -> Result<Complement> {
    let mut comp = Complement::diagonal(p);
    for (l, r) in p.relations() {
        let (Some(&s), Some(&t)) = (l.letters.first(), r.letters.first()) else {
            return Err(Error::NotComplemented("relation with an empty side".into()));
        };
        comp.set_pair(s, t, l.letters[1..].to_vec(), r.letters[1..].to_vec())?;
    }
    Ok(comp)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubeVerdict {
    Complete,
    /// The triple `(u, v, w)` for which `(u\v)\(u\w)` and `(v\u)\(v\w)`
    /// disagree.
    CounterExample(Vec<GenId>, Vec<GenId>, Vec<GenId>),
    /// Reversing ran out of fuel on this triple.
    Inconclusive(Vec<GenId>, Vec<GenId>, Vec<GenId>),
}

impl CubeVerdict {
    pub fn is_complete(&self) -> bool {
        matches!(self, CubeVerdict::Complete)
    }
}

enum Side {
    Defined(Vec<GenId>),
    Undefined,
    Diverged,
}

fn slash(comp: &Complement, u: &[GenId], v: &[GenId], factor: usize) -> Side {
    match comp.complement_words(u, v, default_fuel(u.len() + v.len(), factor)) {
        Reversal::Reversed { pos, .. } => Side::Defined(pos),
        Reversal::Stuck { .. } => Side::Undefined,
        Reversal::Diverged { .. } => Side::Diverged,
    }
}

fn cube_side(comp: &Complement, u: &[GenId], v: &[GenId], w: &[GenId], factor: usize) -> Side {
    let uv = match slash(comp, u, v, factor) {
        Side::Defined(x) => x,
        other => return other,
    };
    let uw = match slash(comp, u, w, factor) {
        Side::Defined(x) => x,
        other => return other,
    };
    slash(comp, &uv, &uw, factor)
}

/// Checks the cube condition on all triples of words of length `1..=depth`
/// with a common source, in lexicographic order of generator ids.
pub fn check_cube_condition(comp: &Complement, depth: usize) -> CubeVerdict {
    check_cube_condition_with(comp, depth, 16)
}

pub fn check_cube_condition_with(
    comp: &Complement,
    depth: usize,
    fuel_factor: usize,
) -> CubeVerdict {
    let depth = depth.max(1);
    let mut words: Vec<Vec<GenId>> = Vec::new();
    let mut layer: Vec<Vec<GenId>> = (0..comp.n).map(|g| vec![g]).collect();
    for _ in 0..depth {
        words.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for w in &layer {
            let end = comp.ends[*w.last().unwrap()].1;
            for g in 0..comp.n {
                if comp.ends[g].0 == end {
                    let mut x = w.clone();
                    x.push(g);
                    next.push(x);
                }
            }
        }
        layer = next;
    }
    let src = |w: &Vec<GenId>| comp.ends[w[0]].0;
    for u in &words {
        for v in words.iter().filter(|v| src(v) == src(u)) {
            for w in words.iter().filter(|w| src(w) == src(u)) {
                let a = cube_side(comp, u, v, w, fuel_factor);
                let b = cube_side(comp, v, u, w, fuel_factor);
                match (a, b) {
                    (Side::Undefined, Side::Undefined) => {}
                    (Side::Defined(a), Side::Defined(b)) => {
                        match comp.complement_words(
                            &a,
                            &b,
                            default_fuel(a.len() + b.len(), fuel_factor),
                        ) {
                            Reversal::Reversed { pos, neg, .. }
                                if pos.is_empty() && neg.is_empty() => {}
                            Reversal::Diverged { .. } => {
                                return CubeVerdict::Inconclusive(u.clone(), v.clone(), w.clone())
                            }
                            _ => {
                                return CubeVerdict::CounterExample(u.clone(), v.clone(), w.clone())
                            }
                        }
                    }
                    (Side::Diverged, _) | (_, Side::Diverged) => {
                        return CubeVerdict::Inconclusive(u.clone(), v.clone(), w.clone())
                    }
                    _ => return CubeVerdict::CounterExample(u.clone(), v.clone(), w.clone()),
                }
            }
        }
    }
    CubeVerdict::Complete
}

/// Least common right-multiple `u·(u\v)`, computed by reversing.
pub fn right_lcm(ctx: &CategoryContext, u: &Word, v: &Word) -> Result<Word> {
    let comp = ctx.complete_complement()?;
    if u.source != v.source {
        return Err(Error::Composition(
            "lcm of words with different sources".into(),
        ));
    }
    let fuel = ctx.fuel_for(u.len() + v.len());
    match comp.complement_words(&u.letters, &v.letters, fuel) {
        Reversal::Reversed { pos, .. } => {
            let mut letters = u.letters.clone();
            letters.extend(pos);
            ctx.presentation().word_from(u.source, &letters)
        }
        Reversal::Stuck { .. } => Err(Error::NoCommonMultiple),
        Reversal::Diverged { cells } => Err(Error::Inconclusive(format!(
            "reversing diverged after {cells} cells"
        ))),
    }
}

/// Equality in a complete context: `u⁻¹v` reverses to the empty word.
pub fn word_equal_via_reversing(ctx: &CategoryContext, u: &Word, v: &Word) -> Result<bool> {
    let comp = ctx.complete_complement()?;
    if u.source != v.source || u.target != v.target {
        return Ok(false);
    }
    let fuel = ctx.fuel_for(u.len() + v.len());
    match comp.complement_words(&u.letters, &v.letters, fuel) {
        Reversal::Reversed { pos, neg, .. } => Ok(pos.is_empty() && neg.is_empty()),
        Reversal::Stuck { .. } => Ok(false),
        Reversal::Diverged { cells } => Err(Error::Inconclusive(format!(
            "reversing diverged after {cells} cells"
        ))),
    }
}

impl fmt::Display for CubeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeVerdict::Complete => write!(f, "complete"),
            CubeVerdict::CounterExample(u, v, w) => write!(f, "counterexample {u:?} {v:?} {w:?}"),
            CubeVerdict::Inconclusive(u, v, w) => write!(f, "inconclusive at {u:?} {v:?} {w:?}"),
        }
    }
}
