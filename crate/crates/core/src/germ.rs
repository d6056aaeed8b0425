//! Finite germs: a family with a partial product, and the category it
//! generates.
//!
//! Germ elements carry their own indices; identities are ordinary elements
//! (one per object) whose products with everything composable are filled in
//! automatically.

use std::collections::HashMap;
use std::fmt;

use crate::category::{CategoryContext, Limits};
use crate::error::{Error, Result};
use crate::word::{ObjectId, Presentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    objects: Vec<String>,
    names: Vec<String>,
    ends: Vec<(ObjectId, ObjectId)>,
    identities: Vec<usize>,
    product: Vec<Option<usize>>,
    lambda: Option<Vec<u32>>,
}

impl Germ {
    /// `elements` are `(name, source, target)` triples; `identities[o]` is
    /// the index of the identity at object `o`; `products` lists defined
    /// products `r • s = t` between elements. Identity products are added.
    pub fn new(
        objects: Vec<String>,
        elements: Vec<(String, ObjectId, ObjectId)>,
        identities: Vec<usize>,
        products: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = elements.len();
        if identities.len() != objects.len() {
            return Err(Error::Validation(
                "need exactly one identity per object".into(),
            ));
        }
        for (o, &e) in identities.iter().enumerate() {
            match elements.get(e) {
                Some((_, s, t)) if s.0 == o && t.0 == o => {}
                _ => {
                    return Err(Error::Validation(format!(
                        "identity of object {o} is not a loop at {o}"
                    )))
                }
            }
        }
        for (name, s, t) in &elements {
            if s.0 >= objects.len() || t.0 >= objects.len() {
                return Err(Error::Validation(format!(
                    "element `{name}` uses an unknown object"
                )));
            }
        }
        let mut names_seen = HashMap::new();
        for (i, (name, _, _)) in elements.iter().enumerate() {
            if names_seen.insert(name.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate element `{name}`")));
            }
        }
        let mut product = vec![None; n * n];
        let ends: Vec<(ObjectId, ObjectId)> = elements.iter().map(|(_, s, t)| (*s, *t)).collect();
        for &(r, s, t) in products {
            if r >= n || s >= n || t >= n {
                return Err(Error::Validation(
                    "product refers to an unknown element".into(),
                ));
            }
            if ends[r].1 != ends[s].0 || ends[t].0 != ends[r].0 || ends[t].1 != ends[s].1 {
                return Err(Error::Composition(format!(
                    "product {} * {} = {} does not respect sources and targets",
                    elements[r].0, elements[s].0, elements[t].0
                )));
            }
            if let Some(old) = product[r * n + s] {
                if old != t {
                    return Err(Error::Validation(format!(
                        "two values for {} * {}",
                        elements[r].0, elements[s].0
                    )));
                }
            }
            product[r * n + s] = Some(t);
        }
        let mut g = Germ {
            objects,
            names: elements.into_iter().map(|(name, _, _)| name).collect(),
            ends,
            identities,
            product,
            lambda: None,
        };
        for x in 0..n {
            let (s, t) = g.ends[x];
            let (ls, lt) = (g.identities[s.0], g.identities[t.0]);
            g.fill_identity(ls, x, x)?;
            g.fill_identity(x, lt, x)?;
        }
        Ok(g)
    }

    fn fill_identity(&mut self, r: usize, s: usize, v: usize) -> Result<()> {
        let n = self.len();
        match self.product[r * n + s] {
            Some(old) if old != v => Err(Error::Validation(format!(
                "identity product {} * {} is not neutral",
                self.names[r], self.names[s]
            ))),
            _ => {
                self.product[r * n + s] = Some(v);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn ends(&self, x: usize) -> (ObjectId, ObjectId) {
        self.ends[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, x: usize) -> bool {
        self.identities.contains(&x)
    }

    pub fn identity_at(&self, o: ObjectId) -> usize {
        self.identities[o.0]
    }

    pub fn product(&self, r: usize, s: usize) -> Option<usize> {
        self.product[r * self.len() + s]
    }

    /// The length function the germ was derived from, if any.
    pub fn lambda(&self) -> Option<&[u32]> {
        self.lambda.as_deref()
    }

    /// The same germ with new element names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Germ> {
        if names.len() != self.len() {
            return Err(Error::Validation("one name per element required".into()));
        }
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate element `{n}`")));
            }
        }
        Ok(Germ {
            names,
            ..self.clone()
        })
    }

    /// Defined products between non-identity elements, in index order.
    pub fn nontrivial_products(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for r in 0..n {
            for s in 0..n {
                if self.is_identity(r) || self.is_identity(s) {
                    continue;
                }
                if let Some(t) = self.product(r, s) {
                    out.push((r, s, t));
                }
            }
        }
        out
    }

    /// `x ≼ y` inside the germ: some `z` has `x • z = y`.
    pub fn left_divides(&self, x: usize, y: usize) -> bool {
        self.quotient(x, y).is_some()
    }

    /// The `z` with `x • z = y` (the smallest index if several).
    pub fn quotient(&self, x: usize, y: usize) -> Option<usize> {
        (0..self.len()).find(|&z| self.product(x, z) == Some(y))
    }

    /// Non-identity elements that are not a product of two non-identities.
    pub fn atoms(&self) -> Vec<usize> {
        let mut decomposable = vec![false; self.len()];
        for (_, _, t) in self.nontrivial_products() {
            decomposable[t] = true;
        }
        (0..self.len())
            .filter(|&x| !self.is_identity(x) && !decomposable[x])
            .collect()
    }

    /// Longest decomposition of each element inside the germ, when that is
    /// well defined (no cycles) and additive on every defined product.
    pub fn additive_height(&self) -> Option<Vec<u32>> {
        let n = self.len();
        let mut height: Vec<Option<u32>> = vec![None; n];
        let prods = self.nontrivial_products();
        for &i in &self.identities {
            height[i] = Some(0);
        }
        // Relax until stable; more than n rounds means a cycle.
        for x in 0..n {
            if height[x].is_none() {
                height[x] = Some(1);
            }
        }
        for round in 0..=n {
            let mut changed = false;
            for &(r, s, t) in &prods {
                let cand = height[r].unwrap() + height[s].unwrap();
                if cand > height[t].unwrap() {
                    height[t] = Some(cand);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            if round == n {
                return None;
            }
        }
        let h: Vec<u32> = height.into_iter().map(|x| x.unwrap()).collect();
        prods
            .iter()
            .all(|&(r, s, t)| h[t] == h[r] + h[s])
            .then_some(h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermViolation {
    IdentityNotNeutral(usize),
    /// A product of two non-identities equals an identity.
    Invertible(usize, usize),
    Associativity(usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermValidity {
    Valid,
    Violation(GermViolation),
}

impl GermValidity {
    pub fn is_valid(&self) -> bool {
        matches!(self, GermValidity::Valid)
    }
}

/// Checks the identity and associativity-where-defined axioms over all
/// pairs and triples.
pub fn validate_germ(g: &Germ) -> GermValidity {
    let n = g.len();
    for x in 0..n {
        let (s, t) = g.ends(x);
        if g.product(g.identity_at(s), x) != Some(x) || g.product(x, g.identity_at(t)) != Some(x) {
            return GermValidity::Violation(GermViolation::IdentityNotNeutral(x));
        }
    }
    for (r, s, t) in g.nontrivial_products() {
        if g.is_identity(t) {
            return GermValidity::Violation(GermViolation::Invertible(r, s));
        }
    }
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                let rs = g.product(r, s);
                let st = g.product(s, t);
                let left = rs.and_then(|x| g.product(x, t));
                let right = st.and_then(|y| g.product(r, y));
                let ok = match (left, right) {
                    (Some(a), Some(b)) => a == b,
                    (None, None) => true,
                    _ => false,
                };
                if !ok {
                    return GermValidity::Violation(GermViolation::Associativity(r, s, t));
                }
            }
        }
    }
    GermValidity::Valid
}

/// The presentation with one generator per non-identity element and one
/// relation `r·s = r•s` per defined product.
pub fn germ_category(g: &Germ) -> Presentation {
    let mut p = Presentation::with_objects(g.objects.clone());
    let mut gen_of = vec![usize::MAX; g.len()];
    for x in 0..g.len() {
        if !g.is_identity(x) {
            let (s, t) = g.ends(x);
            gen_of[x] = p
                .add_generator(&g.names[x], s, t)
                .expect("germ names are valid generator names");
        }
    }
    for (r, s, t) in g.nontrivial_products() {
        let lhs = p.word(&[gen_of[r], gen_of[s]]).expect("composable");
        let rhs = p.word(&[gen_of[t]]).expect("composable");
        p.add_relation(lhs, rhs).expect("same endpoints");
    }
    p
}

/// Map from germ element to generator id in [`germ_category`]'s output.
pub fn germ_generator_ids(g: &Germ) -> Vec<Option<usize>> {
    let mut next = 0;
    (0..g.len())
        .map(|x| {
            if g.is_identity(x) {
                None
            } else {
                next += 1;
                Some(next - 1)
            }
        })
        .collect()
}

/// The generated category as a context, with the germ's additive height as
/// weights when available.
pub fn germ_context(g: &Germ) -> Result<CategoryContext> {
    germ_context_with(g, Limits::default())
}

pub fn germ_context_with(g: &Germ, limits: Limits) -> Result<CategoryContext> {
    let ctx = CategoryContext::with_limits(germ_category(g), limits);
    match g.additive_height() {
        Some(h) => {
            let w: Vec<u32> = (0..g.len())
                .filter(|&x| !g.is_identity(x))
                .map(|x| h[x])
                .collect();
            ctx.with_weights(w)
        }
        None => Ok(ctx),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermVerdict {
    Garside,
    NotGarside(String),
}

/// Result of the Garside-germ test. For each composable pair `(s, t)`,
/// `j_greatest` holds the greatest `r ≼ t` with `s • r` defined, and
/// `head` holds `s • r`, the head of `s·t` in the generated category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermWitness {
    pub verdict: GermVerdict,
    n: usize,
    j_greatest: Vec<Option<usize>>,
    head: Vec<Option<usize>>,
}

impl GermWitness {
    pub fn is_garside(&self) -> bool {
        self.verdict == GermVerdict::Garside
    }

    pub fn j_greatest(&self, s: usize, t: usize) -> Option<usize> {
        self.j_greatest[s * self.n + t]
    }

    pub fn head(&self, s: usize, t: usize) -> Option<usize> {
        self.head[s * self.n + t]
    }
}

/// `J(s, t) = { r : r ≼ t and s • r is defined }`.
pub fn j_family(g: &Germ, s: usize, t: usize) -> Vec<usize> {
    (0..g.len())
        .filter(|&r| g.product(s, r).is_some() && g.left_divides(r, t))
        .collect()
}

/// `I(s, t) = { s • r : r ∈ J(s, t) }`.
pub fn i_family(g: &Germ, s: usize, t: usize) -> Vec<usize> {
    j_family(g, s, t)
        .into_iter()
        .filter_map(|r| g.product(s, r))
        .collect()
}

fn greatest(g: &Germ, family: &[usize]) -> Option<usize> {
    family
        .iter()
        .copied()
        .find(|&m| family.iter().all(|&x| g.left_divides(x, m)))
}

/// A valid germ is declared Garside when it is left-cancellative and every
/// family `I(s, t)` (equivalently `J(s, t)`) has a greatest element for the
/// germ's left-divisibility.
pub fn is_garside_germ(g: &Germ) -> GermWitness {
    let n = g.len();
    let mut w = GermWitness {
        verdict: GermVerdict::Garside,
        n,
        j_greatest: vec![None; n * n],
        head: vec![None; n * n],
    };
    if let GermValidity::Violation(v) = validate_germ(g) {
        w.verdict = GermVerdict::NotGarside(format!("not a germ: {v:?}"));
        return w;
    }
    for s in 0..n {
        for t in 0..n {
            for u in (t + 1)..n {
                if g.product(s, t).is_some() && g.product(s, t) == g.product(s, u) {
                    w.verdict = GermVerdict::NotGarside(format!(
                        "not left-cancellative: {} * {} = {} * {}",
                        g.name(s),
                        g.name(t),
                        g.name(s),
                        g.name(u)
                    ));
                    return w;
                }
            }
        }
    }
    for s in 0..n {
        for t in 0..n {
            if g.ends(s).1 != g.ends(t).0 {
                continue;
            }
            let j = j_family(g, s, t);
            match greatest(g, &j) {
                Some(r) => {
                    w.j_greatest[s * n + t] = Some(r);
                    let h = g.product(s, r).expect("r in J(s, t)");
                    debug_assert_eq!(greatest(g, &i_family(g, s, t)), Some(h));
                    w.head[s * n + t] = Some(h);
                }
                None => {
                    if w.verdict == GermVerdict::Garside {
                        let maxima: Vec<&str> = j
                            .iter()
                            .filter(|&&x| !j.iter().any(|&y| y != x && g.left_divides(x, y)))
                            .map(|&x| g.name(x))
                            .collect();
                        w.verdict = GermVerdict::NotGarside(format!(
                            "J({}, {}) has no greatest element; maximal elements {}",
                            g.name(s),
                            g.name(t),
                            maxima.join(", ")
                        ));
                    }
                }
            }
        }
    }
    w
}

/// Left-multiplies the normal sequence `nf` by the germ element `s` using
/// the witness's pair normalization, sweeping left to right.
pub fn germ_left_multiply(g: &Germ, w: &GermWitness, s: usize, nf: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(nf.len() + 1);
    let mut carry = s;
    let mut i = 0;
    while i < nf.len() {
        if g.is_identity(carry) {
            break;
        }
        let x = nf[i];
        let r = w.j_greatest(carry, x).ok_or_else(|| {
            Error::HeadUndefined(format!("no head for {} · {}", g.name(carry), g.name(x)))
        })?;
        out.push(g.product(carry, r).expect("witness entry is defined"));
        carry = g.quotient(r, x).expect("r divides x");
        i += 1;
    }
    if !g.is_identity(carry) {
        out.push(carry);
    }
    out.extend_from_slice(&nf[i..]);
    Ok(out)
}

/// Greedy normal form of a product of germ elements, via the head table.
pub fn germ_normal_form(g: &Germ, w: &GermWitness, letters: &[usize]) -> Result<Vec<usize>> {
    let mut nf = Vec::new();
    for &s in letters.iter().rev() {
        if !g.is_identity(s) {
            nf = germ_left_multiply(g, w, s, &nf)?;
        }
    }
    Ok(nf)
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Checks identity, inverses and associativity.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if table.len() != n
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(Error::Validation(
                "multiplication table must be n×n over 0..n".into(),
            ));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let g = Self::build(names, flat)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::Validation(
                            "multiplication is not associative".into(),
                        ));
                    }
                }
            }
        }
        Ok(g)
    }

    /// The group of the given permutations of `0..k` (which must be closed
    /// under composition). `(p·q)(i) = q(p(i))`: apply `p` first.
    pub fn from_permutations(names: Vec<String>, perms: &[Vec<usize>]) -> Result<Self> {
        let index: HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (&p[..], i)).collect();
        if index.len() != perms.len() {
            return Err(Error::Validation("repeated permutation".into()));
        }
        let n = perms.len();
        let mut flat = Vec::with_capacity(n * n);
        for p in perms {
            for q in perms {
                let pq: Vec<usize> = p.iter().map(|&i| q[i]).collect();
                flat.push(
                    *index
                        .get(&pq[..])
                        .ok_or_else(|| Error::Validation("permutations not closed".into()))?,
                );
            }
        }
        Self::build(names, flat)
    }

    fn build(names: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = names.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| Error::Validation("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            inverse.push(
                (0..n)
                    .find(|&y| table[x * n + y] == identity)
                    .ok_or_else(|| Error::Validation("element without inverse".into()))?,
            );
        }
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Germ of a group with a length function: `f • g` is defined (and equals
/// `fg`) when `λ(fg) = λ(f) + λ(g)`. With a bound `δ` the germ is restricted
/// to the prefixes of `δ`, and products must stay below `δ`.
pub fn germ_from_groupoid(
    group: &FiniteGroup,
    lambda: &[u32],
    bound: Option<usize>,
) -> Result<Germ> {
    let n = group.order();
    if lambda.len() != n {
        return Err(Error::Validation(
            "one length per group element required".into(),
        ));
    }
    let e = group.identity();
    if lambda[e] != 0 {
        return Err(Error::Validation("length of the identity must be 0".into()));
    }
    for x in 0..n {
        if x != e && lambda[x] == 0 {
            return Err(Error::Validation(format!(
                "element {} has length 0",
                group.names()[x]
            )));
        }
        for y in 0..n {
            if lambda[group.mul(x, y)] > lambda[x] + lambda[y] {
                return Err(Error::Validation(
                    "length function is not subadditive".into(),
                ));
            }
        }
    }
    let members: Vec<usize> = match bound {
        None => (0..n).collect(),
        Some(d) => {
            if d >= n {
                return Err(Error::Validation("bound is not a group element".into()));
            }
            (0..n)
                .filter(|&x| lambda[x] + lambda[group.mul(group.inverse(x), d)] == lambda[d])
                .collect()
        }
    };
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let elements = members
        .iter()
        .map(|&x| (group.names()[x].clone(), ObjectId(0), ObjectId(0)))
        .collect();
    let mut products = Vec::new();
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate() {
            let xy = group.mul(x, y);
            if lambda[xy] == lambda[x] + lambda[y] {
                if let Some(&k) = pos.get(&xy) {
                    products.push((i, j, k));
                }
            }
        }
    }
    let mut germ = Germ::new(vec!["*".into()], elements, vec![pos[&e]], &products)?;
    germ.lambda = Some(members.iter().map(|&x| lambda[x]).collect());
    Ok(germ)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Number of inversions: the Coxeter length for the adjacent transpositions.
pub fn inversions(p: &[usize]) -> u32 {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

/// `n − #cycles`: the length for the generating set of all transpositions.
pub fn reflection_length(p: &[usize]) -> u32 {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for i in 0..p.len() {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
    }
    (p.len() - cycles) as u32
}

impl GermViolation {
    /// Human-readable form using the germ's element names.
    pub fn describe(&self, g: &Germ) -> String {
        match *self {
            GermViolation::IdentityNotNeutral(x) => {
                format!("identity {} is not neutral", g.name(x))
            }
            GermViolation::Invertible(r, s) => {
                format!("{} * {} is an identity", g.name(r), g.name(s))
            }
            GermViolation::Associativity(r, s, t) => {
                format!(
                    "products of {}, {}, {} disagree on bracketing",
                    g.name(r),
                    g.name(s),
                    g.name(t)
                )
            }
        }
    }
}

impl fmt::Display for GermVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermVerdict::Garside => write!(f, "Garside"),
            GermVerdict::NotGarside(why) => write!(f, "not Garside: {why}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<(String, ObjectId, ObjectId)> {
        v.iter()
            .map(|n| (n.to_string(), ObjectId(0), ObjectId(0)))
            .collect()
    }

    /// Divisors of xy in N²: 1, x, y, xy.
    fn n2_divisors() -> Germ {
        Germ::new(
            vec!["*".into()],
            names(&["1", "x", "y", "xy"]),
            vec![0],
            &[(1, 2, 3), (2, 1, 3)],
        )
        .unwrap()
    }

    fn s3_group() -> FiniteGroup {
        let perms = permutations(3);
        let names = (0..perms.len()).map(|i| format!("p{i}")).collect();
        FiniteGroup::from_permutations(names, &perms).unwrap()
    }

    fn s3_germ() -> Germ {
        let g = s3_group();
        let lambda: Vec<u32> = permutations(3).iter().map(|p| inversions(p)).collect();
        germ_from_groupoid(&g, &lambda, None).unwrap()
    }

    #[test]
    fn n2_divisor_germ_is_valid_and_garside() {
        let g = n2_divisors();
        assert!(validate_germ(&g).is_valid());
        assert!(is_garside_germ(&g).is_garside());
        let p = germ_category(&g);
        assert_eq!(p.generators().len(), 3);
        let rels: Vec<String> = p
            .relations()
            .iter()
            .map(|(l, r)| format!("{} = {}", p.display_word(l), p.display_word(r)))
            .collect();
        assert_eq!(rels, vec!["x y = xy", "y x = xy"]);
    }

    #[test]
    fn s3_germ_shape() {
        let g = s3_germ();
        assert_eq!(g.len(), 6);
        assert!(validate_germ(&g).is_valid());
        assert!(is_garside_germ(&g).is_garside());
        assert_eq!(g.atoms().len(), 2);
        assert_eq!(germ_category(&g).generators().len(), 5);
        let lam = g.lambda().unwrap();
        for (r, s, t) in g.nontrivial_products() {
            assert_eq!(lam[t], lam[r] + lam[s]);
        }
        assert_eq!(g.additive_height().unwrap(), lam.to_vec());
    }

    #[test]
    fn tampered_s3_germ_violates_associativity() {
        let g = s3_germ();
        let atoms = g.atoms();
        let (a, b) = (atoms[0], atoms[1]);
        let products: Vec<(usize, usize, usize)> = g
            .nontrivial_products()
            .into_iter()
            .filter(|&(r, s, _)| (r, s) != (a, b))
            .collect();
        let elements = (0..g.len())
            .map(|x| (g.name(x).to_string(), ObjectId(0), ObjectId(0)))
            .collect();
        let t = Germ::new(
            vec!["*".into()],
            elements,
            g.identities().to_vec(),
            &products,
        )
        .unwrap();
        // b • a and a • (b • a) are defined but a • b is not.
        let ba = g.product(b, a).unwrap();
        assert!(g.product(a, ba).is_some());
        match validate_germ(&t) {
            GermValidity::Violation(GermViolation::Associativity(r, s, u)) => {
                let left = t.product(r, s).and_then(|x| t.product(x, u));
                let right = t.product(s, u).and_then(|y| t.product(r, y));
                assert_ne!(left, right);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_germ_has_no_relations() {
        let g = Germ::new(vec!["*".into()], names(&["1", "x", "y"]), vec![0], &[]).unwrap();
        assert!(validate_germ(&g).is_valid());
        assert!(germ_category(&g).relations().is_empty());
        // {x, y} is a Garside family of the free monoid it generates.
        assert!(is_garside_germ(&g).is_garside());
    }

    #[test]
    fn truncated_n3_cube_is_not_garside() {
        // {0,1}³ without the top vector: J(e1, e2+e3) = {1, e2, e3}.
        let g = Germ::new(
            vec!["*".into()],
            names(&["1", "x", "y", "z", "xy", "xz", "yz"]),
            vec![0],
            &[
                (1, 2, 4),
                (2, 1, 4),
                (1, 3, 5),
                (3, 1, 5),
                (2, 3, 6),
                (3, 2, 6),
            ],
        )
        .unwrap();
        assert!(validate_germ(&g).is_valid());
        let w = is_garside_germ(&g);
        match &w.verdict {
            GermVerdict::NotGarside(why) => assert!(why.contains("J(x, yz)"), "{why}"),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn dual_s3_interval_has_five_elements() {
        let g = s3_group();
        let perms = permutations(3);
        let lambda: Vec<u32> = perms.iter().map(|p| reflection_length(p)).collect();
        let delta = perms.iter().position(|p| p == &vec![1, 2, 0]).unwrap();
        let germ = germ_from_groupoid(&g, &lambda, Some(delta)).unwrap();
        assert_eq!(germ.len(), 5);
        assert!(validate_germ(&germ).is_valid());
        assert!(is_garside_germ(&germ).is_garside());
        assert_eq!(germ.atoms().len(), 3);
    }

    #[test]
    fn invalid_length_function() {
        let g = s3_group();
        let mut lambda = vec![1; 6];
        assert!(matches!(
            germ_from_groupoid(&g, &lambda, None),
            Err(Error::Validation(_))
        ));
        lambda = vec![0; 6];
        assert!(germ_from_groupoid(&g, &lambda, None).is_err());
    }

    #[test]
    fn group_table_validation() {
        let ok =
            FiniteGroup::from_table(vec!["e".into(), "g".into()], vec![vec![0, 1], vec![1, 0]])
                .unwrap();
        assert_eq!(ok.inverse(1), 1);
        let bad =
            FiniteGroup::from_table(vec!["e".into(), "g".into()], vec![vec![0, 1], vec![1, 1]]);
        assert!(bad.is_err());
    }

    #[test]
    fn germ_normal_form_matches_head_table() {
        let g = s3_germ();
        let w = is_garside_germ(&g);
        let atoms = g.atoms();
        let (a, b) = (atoms[0], atoms[1]);
        // a·b·a·b: head is Δ, then the remaining atom.
        let nf = germ_normal_form(&g, &w, &[a, b, a, b]).unwrap();
        assert_eq!(nf.len(), 2);
        assert_eq!(g.lambda().unwrap()[nf[0]], 3);
        assert_eq!(nf[1], b);
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(inversions(&[2, 1, 0]), 3);
        assert_eq!(reflection_length(&[1, 2, 0]), 2);
        assert_eq!(reflection_length(&[0, 1, 2]), 0);
    }
}
