//! Garside families over a category context, driven by the context's
//! divisibility oracles.
//!
//! This is the general route: every query goes through `left_divides` and
//! `left_quotient`. The table-driven route for bounded families lives in
//! [`crate::bounded`]; the two are cross-checked in tests.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::category::CategoryContext;
use crate::error::{Error, Result};
use crate::word::{GenId, ObjectId, SignedWord, Word};

type Key = (ObjectId, Vec<GenId>);

/// A finite family of non-identity elements, stored as canonical words.
#[derive(Debug)]
pub struct GarsideFamily {
    elements: Vec<Word>,
    index: HashMap<Key, usize>,
    head_memo: Mutex<HashMap<Key, usize>>,
    le_memo: Mutex<HashMap<(usize, usize), bool>>,
}

impl Clone for GarsideFamily {
    fn clone(&self) -> Self {
        GarsideFamily {
            elements: self.elements.clone(),
            index: self.index.clone(),
            head_memo: Mutex::new(HashMap::new()),
            le_memo: Mutex::new(HashMap::new()),
        }
    }
}

impl GarsideFamily {
    /// Canonicalizes and deduplicates `words`; identities are dropped.
    /// Without Noetherianity the words are kept as given and deduplicated
    /// by pairwise comparison.
    pub fn new(ctx: &CategoryContext, words: &[Word]) -> Result<Self> {
        let mut elements: Vec<Word> = Vec::new();
        let mut index = HashMap::new();
        for w in words {
            if w.is_empty() {
                continue;
            }
            if !ctx.is_noetherian() {
                let mut dup = false;
                for e in &elements {
                    if ctx.equal(e, w)? {
                        dup = true;
                        break;
                    }
                }
                if !dup {
                    index.insert((w.source, w.letters.clone()), elements.len());
                    elements.push(w.clone());
                }
                continue;
            }
            let c = ctx.canonical(w)?;
            let key = (c.source, c.letters.clone());
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                e.insert(elements.len());
                elements.push(c);
            }
        }
        Ok(GarsideFamily {
            elements,
            index,
            head_memo: Mutex::new(HashMap::new()),
            le_memo: Mutex::new(HashMap::new()),
        })
    }

    /// Wraps words already known to be canonical and pairwise distinct.
    pub(crate) fn from_canonical(words: Vec<Word>) -> Self {
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| ((w.source, w.letters.clone()), i))
            .collect();
        GarsideFamily {
            elements: words,
            index,
            head_memo: Mutex::new(HashMap::new()),
            le_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Word {
        &self.elements[i]
    }

    /// Index of the family element equal to `w`, if any.
    pub fn index_of(&self, ctx: &CategoryContext, w: &Word) -> Result<Option<usize>> {
        if w.is_empty() {
            return Ok(None);
        }
        if !ctx.is_noetherian() {
            for (i, e) in self.elements.iter().enumerate() {
                if ctx.equal(e, w)? {
                    return Ok(Some(i));
                }
            }
            return Ok(None);
        }
        let c = ctx.canonical(w)?;
        Ok(self.index.get(&(c.source, c.letters)).copied())
    }

    pub fn contains(&self, ctx: &CategoryContext, w: &Word) -> Result<bool> {
        Ok(self.index_of(ctx, w)?.is_some())
    }

    fn le(&self, ctx: &CategoryContext, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Ok(true);
        }
        if let Some(&b) = self.le_memo.lock().unwrap().get(&(i, j)) {
            return Ok(b);
        }
        let b = ctx.left_divides(&self.elements[i], &self.elements[j])?;
        self.le_memo.lock().unwrap().insert((i, j), b);
        Ok(b)
    }
}

/// Factor sequence of a greedy normal decomposition; factors are family
/// indices and the empty sequence is the identity at `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalDecomposition {
    pub factors: Vec<usize>,
    pub source: ObjectId,
}

impl NormalDecomposition {
    pub fn identity(source: ObjectId) -> Self {
        NormalDecomposition {
            factors: Vec::new(),
            source,
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The product of the factors as one word.
    pub fn to_word(&self, family: &GarsideFamily) -> Word {
        let mut w = Word::empty(self.source);
        for &f in &self.factors {
            w = w.concat(family.element(f)).expect("normal factors compose");
        }
        w
    }

    /// Factors joined by `.`, e.g. `aba.b`; the identity prints as `1`.
    pub fn display(&self, ctx: &CategoryContext, family: &GarsideFamily) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|&f| {
                ctx.presentation()
                    .display_compact(&family.element(f).letters)
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// `(t₁⋯t_l)⁻¹·(s₁⋯s_k)` with both halves normal and left-disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricNormal {
    pub negative: NormalDecomposition,
    pub positive: NormalDecomposition,
}

impl SymmetricNormal {
    pub fn to_signed_word(&self, family: &GarsideFamily) -> SignedWord {
        let n = self.negative.to_word(family).inverse();
        let p = self.positive.to_word(family).to_signed();
        n.concat(&p).expect("fraction halves share a source")
    }
}

/// True iff every family element left-dividing `s1·s2` left-divides `s1`.
pub fn is_greedy(
    ctx: &CategoryContext,
    family: &GarsideFamily,
    s1: &Word,
    s2: &Word,
) -> Result<bool> {
    let prod = s1.concat(s2)?;
    for t in family.elements().iter().filter(|t| t.source == s1.source) {
        if ctx.left_divides(t, &prod)? && !ctx.left_divides(t, s1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The greatest left divisor of `g` lying in the family.
pub fn head(ctx: &CategoryContext, family: &GarsideFamily, g: &Word) -> Result<usize> {
    if g.is_empty() {
        return Err(Error::HeadUndefined(
            "the identity has no nontrivial head".into(),
        ));
    }
    let key = {
        let c = ctx.canonical(g)?;
        (c.source, c.letters)
    };
    if let Some(&h) = family.head_memo.lock().unwrap().get(&key) {
        return Ok(h);
    }
    let mut divisors = Vec::new();
    for (i, t) in family.elements().iter().enumerate() {
        if t.source == g.source && ctx.left_divides(t, g)? {
            divisors.push(i);
        }
    }
    if divisors.is_empty() {
        return Err(Error::HeadUndefined(
            "no family element divides the word".into(),
        ));
    }
    // The greatest divisor, if any, has the largest weight.
    let weight = |i: usize| {
        ctx.weight(family.element(i))
            .unwrap_or(family.element(i).len() as u64)
    };
    let best = *divisors
        .iter()
        .max_by_key(|&&i| (weight(i), std::cmp::Reverse(i)))
        .unwrap();
    for &d in &divisors {
        if !family.le(ctx, d, best)? {
            return Err(Error::HeadUndefined(format!(
                "incomparable maximal divisors {} and {}",
                ctx.presentation().display_word(family.element(d)),
                ctx.presentation().display_word(family.element(best))
            )));
        }
    }
    family.head_memo.lock().unwrap().insert(key, best);
    Ok(best)
}

/// Greedy normal decomposition by iterated head extraction.
pub fn normalize(
    ctx: &CategoryContext,
    family: &GarsideFamily,
    w: &Word,
) -> Result<NormalDecomposition> {
    let mut factors = Vec::new();
    let mut rest = w.clone();
    while !rest.is_empty() {
        let h = head(ctx, family, &rest)?;
        rest = ctx
            .left_quotient(family.element(h), &rest)?
            .ok_or_else(|| Error::HeadUndefined("head does not divide the word".into()))?;
        factors.push(h);
        if factors.len() > w.len() * 64 + 64 {
            return Err(Error::Inconclusive(
                "normalization does not terminate".into(),
            ));
        }
    }
    Ok(NormalDecomposition {
        factors,
        source: w.source,
    })
}

/// Normal form of `s·t` for family elements: `(head, remainder)` where the
/// remainder is a family element or `None` for the identity.
fn normalize_pair(
    ctx: &CategoryContext,
    family: &GarsideFamily,
    s: usize,
    t: usize,
) -> Result<(usize, Option<usize>)> {
    let prod = family.element(s).concat(family.element(t))?;
    let h = head(ctx, family, &prod)?;
    let r = ctx
        .left_quotient(family.element(h), &prod)?
        .ok_or_else(|| Error::HeadUndefined("head does not divide the product".into()))?;
    if r.is_empty() {
        return Ok((h, None));
    }
    match family.index_of(ctx, &r)? {
        Some(i) => Ok((h, Some(i))),
        None => Err(Error::HeadUndefined(
            "remainder of a two-factor product left the family".into(),
        )),
    }
}

/// Normal decomposition of `s·nd`, by a left-to-right sweep of length-two
/// renormalizations.
pub fn left_multiply_normal(
    ctx: &CategoryContext,
    family: &GarsideFamily,
    s: Option<usize>,
    nd: &NormalDecomposition,
) -> Result<NormalDecomposition> {
    let Some(mut carry) = s else {
        return Ok(nd.clone());
    };
    let source = family.element(carry).source;
    let mut out = Vec::with_capacity(nd.len() + 1);
    let mut i = 0;
    let mut pending = Some(carry);
    while i < nd.factors.len() {
        let (h, r) = normalize_pair(ctx, family, carry, nd.factors[i])?;
        out.push(h);
        i += 1;
        match r {
            Some(r) => carry = r,
            None => {
                pending = None;
                break;
            }
        }
        pending = Some(carry);
    }
    if let Some(c) = pending {
        out.push(c);
    }
    out.extend_from_slice(&nd.factors[i..]);
    Ok(NormalDecomposition {
        factors: out,
        source,
    })
}

/// Checks every adjacent pair of a factor sequence for greediness.
pub fn is_normal(
    ctx: &CategoryContext,
    family: &GarsideFamily,
    nd: &NormalDecomposition,
) -> Result<bool> {
    for pair in nd.factors.windows(2) {
        if !is_greedy(
            ctx,
            family,
            family.element(pair[0]),
            family.element(pair[1]),
        )? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyFailure {
    /// An atom outside the family.
    DoesNotGenerate(Word),
    NotLcmClosed {
        s: Word,
        t: Word,
        lcm: Word,
    },
    NotRightDivisorClosed {
        element: Word,
        divisor: Word,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyVerdict {
    Yes,
    No(FamilyFailure),
}

impl FamilyVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, FamilyVerdict::Yes)
    }
}

/// In a Noetherian context with unique right-lcms, a family is a Garside
/// family iff it generates and is closed under right-lcm and right-divisor.
pub fn is_garside_family(ctx: &CategoryContext, family: &GarsideFamily) -> Result<FamilyVerdict> {
    if !ctx.is_noetherian() || !ctx.is_complete() {
        return Err(Error::Unsupported(
            "family recognition needs a Noetherian context with a complete complement".into(),
        ));
    }
    for a in ctx.atoms()? {
        if !family.contains(ctx, &a)? {
            return Ok(FamilyVerdict::No(FamilyFailure::DoesNotGenerate(a)));
        }
    }
    let els = family.elements();
    for (i, s) in els.iter().enumerate() {
        for t in els[i + 1..].iter().filter(|t| t.source == s.source) {
            match crate::reversing::right_lcm(ctx, s, t) {
                Ok(l) => {
                    if !family.contains(ctx, &l)? {
                        let lcm = ctx.canonical(&l)?;
                        return Ok(FamilyVerdict::No(FamilyFailure::NotLcmClosed {
                            s: s.clone(),
                            t: t.clone(),
                            lcm,
                        }));
                    }
                }
                Err(Error::NoCommonMultiple) => {}
                Err(e) => return Err(e),
            }
        }
    }
    for s in els {
        for d in ctx.left_divisors(s, ctx.limits().divisor_budget)? {
            let q = ctx.left_quotient(&d, s)?.expect("enumerated divisor");
            if !q.is_empty() && !family.contains(ctx, &q)? {
                let divisor = ctx.canonical(&q)?;
                return Ok(FamilyVerdict::No(FamilyFailure::NotRightDivisorClosed {
                    element: s.clone(),
                    divisor,
                }));
            }
        }
    }
    Ok(FamilyVerdict::Yes)
}

/// Closure of the atoms under right-lcm and right-divisor, stopping after
/// `budget` elements. In a Noetherian context with lcms this is the
/// smallest Garside family.
pub fn smallest_garside_family(ctx: &CategoryContext, budget: usize) -> Result<GarsideFamily> {
    if !ctx.is_noetherian() || !ctx.is_complete() {
        return Err(Error::Unsupported(
            "automatic family search needs a complete Noetherian context".into(),
        ));
    }
    let mut elems: Vec<Word> = ctx.atoms()?;
    let mut keys: std::collections::HashSet<Key> = elems
        .iter()
        .map(|w| (w.source, w.letters.clone()))
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        let mut fresh = Vec::new();
        for i in 0..elems.len() {
            for j in 0..elems.len() {
                if i == j || elems[i].source != elems[j].source {
                    continue;
                }
                let l = match crate::reversing::right_lcm(ctx, &elems[i], &elems[j]) {
                    Ok(l) => l,
                    Err(Error::NoCommonMultiple) => continue,
                    Err(e) => return Err(e),
                };
                fresh.push(l);
            }
        }
        for s in &elems {
            for d in ctx.left_divisors(s, budget)? {
                let q = ctx.left_quotient(&d, s)?.expect("enumerated divisor");
                if !q.is_empty() {
                    fresh.push(q);
                }
            }
        }
        for f in fresh {
            let c = ctx.canonical(&f)?;
            if keys.insert((c.source, c.letters.clone())) {
                elems.push(c);
                changed = true;
                if elems.len() > budget {
                    return Err(Error::ExplosionGuard { budget });
                }
            }
        }
    }
    GarsideFamily::new(ctx, &elems)
}

/// Word problem by comparing normal forms factorwise.
pub fn word_problem(
    ctx: &CategoryContext,
    family: &GarsideFamily,
    u: &Word,
    v: &Word,
) -> Result<bool> {
    if u.source != v.source || u.target != v.target {
        return Ok(false);
    }
    Ok(normalize(ctx, family, u)? == normalize(ctx, family, v)?)
}

/// Symmetric normal form of a signed word: left-reverse to `N⁻¹·P`, strip
/// the common left divisor atom by atom, then normalize both halves.
pub fn symmetric_normalize(
    ctx: &CategoryContext,
    family: &GarsideFamily,
    w: &SignedWord,
) -> Result<SymmetricNormal> {
    let (mut den, mut num) = match ctx.left_fraction(w) {
        Ok(f) => f,
        Err(Error::NoCommonMultiple) => {
            return Err(Error::Unsupported(
                "no common multiples, no fraction form".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    'strip: loop {
        for g in ctx
            .presentation()
            .generators()
            .iter()
            .filter(|g| g.source == den.source)
        {
            let gw = ctx.presentation().word(&[g.id])?;
            if let (Some(d), Some(n)) =
                (ctx.left_quotient(&gw, &den)?, ctx.left_quotient(&gw, &num)?)
            {
                den = d;
                num = n;
                continue 'strip;
            }
        }
        break;
    }
    Ok(SymmetricNormal {
        negative: normalize(ctx, family, &den)?,
        positive: normalize(ctx, family, &num)?,
    })
}

impl fmt::Display for FamilyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyFailure::DoesNotGenerate(a) => {
                write!(f, "atom {:?} is not in the family", a.letters)
            }
            FamilyFailure::NotLcmClosed { s, t, lcm } => {
                write!(
                    f,
                    "lcm of {:?} and {:?} is {:?}, outside the family",
                    s.letters, t.letters, lcm.letters
                )
            }
            FamilyFailure::NotRightDivisorClosed { element, divisor } => {
                write!(
                    f,
                    "right divisor {:?} of {:?} is outside the family",
                    divisor.letters, element.letters
                )
            }
        }
    }
}
