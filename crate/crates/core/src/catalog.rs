//! Built-in example structures.
//!
//! Keys: `free_abelian:N` (1 ≤ N ≤ 8), `braid:N` and `dual:N` (2 ≤ N ≤ 6),
//! `artin:TYPE` and `klein`. An Artin–Tits type is a name such as `A3`,
//! `B2`, `D4`, `G2`, `I2(5)`, `A~1`, or the upper triangle of a Coxeter
//! matrix as comma-separated entries with `inf` for ∞ (`3,2,3` is `A3`).

use std::f64::consts::PI;

use crate::bounded::{
    build_garside_map, garside_map_for_delta, Boundedness, GarsideMap, UnboundedCertificate,
};
use crate::category::CategoryContext;
use crate::error::{Error, Result};
use crate::garside::GarsideFamily;
use crate::germ::{
    germ_from_groupoid, inversions, permutations, reflection_length, FiniteGroup, Germ,
};
use crate::reversing::right_lcm;
use crate::word::{ObjectId, Presentation, Word};

pub const MAX_FREE_ABELIAN: usize = 8;
pub const MAX_BRAID: usize = 6;
/// Largest simple set built for an Artin–Tits type.
pub const MAX_SIMPLES: usize = 720;

const ABELIAN_NAMES: [&str; 8] = ["x", "y", "z", "t", "u", "v", "w", "s"];

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: String,
    pub provenance: String,
    pub context: CategoryContext,
    pub family: Option<GarsideFamily>,
    pub map: Option<GarsideMap>,
    /// The germ of simples, named by their canonical words.
    pub germ: Option<Germ>,
    /// Present when the bounded search failed.
    pub unbounded: Option<UnboundedCertificate>,
}

/// Example keys, one per builder.
pub fn keys() -> Vec<&'static str> {
    vec![
        "free_abelian:2",
        "braid:3",
        "dual:3",
        "artin:B2",
        "artin:A~1",
        "klein",
    ]
}

pub fn lookup(key: &str) -> Result<CatalogEntry> {
    let (kind, arg) = key.split_once(':').unwrap_or((key, ""));
    let number = || -> Result<usize> {
        arg.parse()
            .map_err(|_| Error::Validation(format!("catalog key `{key}` needs a number")))
    };
    match kind {
        "free_abelian" => free_abelian(number()?),
        "braid" => braid_classical(number()?),
        "dual" => braid_dual(number()?),
        "artin" => artin_tits(&CoxeterMatrix::parse(arg)?),
        "klein" if arg.is_empty() => klein_bottle(),
        _ => Err(Error::Validation(format!("unknown catalog key `{key}`"))),
    }
}

/// Nⁿ, built from the germ of subsets of an n-set under disjoint union.
pub fn free_abelian(n: usize) -> Result<CatalogEntry> {
    if !(1..=MAX_FREE_ABELIAN).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "free_abelian needs 1 ≤ n ≤ {MAX_FREE_ABELIAN}, got {n}"
        )));
    }
    let size = 1usize << n;
    let names: Vec<String> = (0..size).map(|m| format!("{m:b}")).collect();
    let table = (0..size)
        .map(|a| (0..size).map(|b| a ^ b).collect())
        .collect();
    let group = FiniteGroup::from_table(names, table)?;
    let lambda: Vec<u32> = (0..size).map(|m: usize| m.count_ones()).collect();
    let germ = germ_from_groupoid(&group, &lambda, None)?;
    let atoms: Vec<(usize, String)> = (0..n)
        .map(|i| (1 << i, ABELIAN_NAMES[i].to_string()))
        .collect();
    from_germ(
        format!("free_abelian:{n}"),
        format!("N^{n}: subsets of {{1..{n}}} under disjoint union; Δ is the full set"),
        germ,
        &atoms,
        size - 1,
    )
}

/// B_n⁺ from the length-additive germ of S_n; atoms `a, b, ...` are the
/// adjacent transpositions.
pub fn braid_classical(n: usize) -> Result<CatalogEntry> {
    if !(2..=MAX_BRAID).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "braid needs 2 ≤ n ≤ {MAX_BRAID}, got {n}"
        )));
    }
    let perms = permutations(n);
    let group = FiniteGroup::from_permutations(perm_names(&perms), &perms)?;
    let lambda: Vec<u32> = perms.iter().map(|p| inversions(p)).collect();
    let germ = germ_from_groupoid(&group, &lambda, None)?;
    let atoms: Vec<(usize, String)> = (0..n - 1)
        .map(|i| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, i + 1);
            (perms.iter().position(|q| *q == p).unwrap(), letter(i))
        })
        .collect();
    let w0: Vec<usize> = (0..n).rev().collect();
    let delta = perms.iter().position(|q| *q == w0).unwrap();
    from_germ(
        format!("braid:{n}"),
        format!(
            "B_{n}^+ from S_{n} with Coxeter length; atom {} swaps i and i+1; Δ is the half twist",
            letter(0)
        ),
        germ,
        &atoms,
        delta,
    )
}

/// The dual braid monoid: the interval below the cycle `i ↦ i+1` in S_n
/// for reflection length. Atoms are the transpositions `(i j)` in
/// lexicographic order, named `a, b, ...`.
pub fn braid_dual(n: usize) -> Result<CatalogEntry> {
    if !(2..=MAX_BRAID).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "dual needs 2 ≤ n ≤ {MAX_BRAID}, got {n}"
        )));
    }
    let perms = permutations(n);
    let group = FiniteGroup::from_permutations(perm_names(&perms), &perms)?;
    let lambda: Vec<u32> = perms.iter().map(|p| reflection_length(p)).collect();
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let bound = perms.iter().position(|q| *q == cycle).unwrap();
    let germ = germ_from_groupoid(&group, &lambda, Some(bound))?;
    let member_names = germ.names().to_vec();
    let mut atoms = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, j);
            let name = &group.names()[perms.iter().position(|q| *q == p).unwrap()];
            let idx = member_names.iter().position(|m| m == name).unwrap();
            pairs.push(format!("{}=({} {})", letter(atoms.len()), i + 1, j + 1));
            atoms.push((idx, letter(atoms.len())));
        }
    }
    let delta_name = &group.names()[bound];
    let delta = member_names.iter().position(|m| m == delta_name).unwrap();
    from_germ(
        format!("dual:{n}"),
        format!(
            "dual braid monoid of S_{n}: noncrossing partitions below the cycle i -> i+1; {}",
            pairs.join(", ")
        ),
        germ,
        &atoms,
        delta,
    )
}

/// A Coxeter matrix; `None` entries are ∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    pub name: String,
    pub m: Vec<Vec<Option<u32>>>,
}

impl CoxeterMatrix {
    pub fn rank(&self) -> usize {
        self.m.len()
    }

    /// From off-diagonal entries of the upper triangle, row by row.
    pub fn from_upper(name: String, rank: usize, upper: &[Option<u32>]) -> Result<Self> {
        if upper.len() != rank * (rank.saturating_sub(1)) / 2 {
            return Err(Error::Validation(format!(
                "a rank {rank} Coxeter matrix has {} off-diagonal entries, got {}",
                rank * (rank.saturating_sub(1)) / 2,
                upper.len()
            )));
        }
        let mut m = vec![vec![Some(1); rank]; rank];
        let mut k = 0;
        for i in 0..rank {
            for j in i + 1..rank {
                let e = upper[k];
                k += 1;
                if let Some(v) = e {
                    if !(2..=6).contains(&v) {
                        return Err(Error::Validation(format!(
                            "Coxeter entry {v} outside 2..=6 or inf"
                        )));
                    }
                }
                m[i][j] = e;
                m[j][i] = e;
            }
        }
        Ok(CoxeterMatrix { name, m })
    }

    fn chain(name: &str, rank: usize, special: &[(usize, usize, u32)]) -> Result<Self> {
        let mut upper = Vec::new();
        for i in 0..rank {
            for j in i + 1..rank {
                let v = special
                    .iter()
                    .find(|&&(a, b, _)| (a, b) == (i, j))
                    .map(|&(_, _, v)| v)
                    .unwrap_or(if j == i + 1 { 3 } else { 2 });
                upper.push(Some(v));
            }
        }
        CoxeterMatrix::from_upper(name.into(), rank, &upper)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::Validation(format!("unrecognised Coxeter type `{t}`"));
        if t == "A~1" {
            return CoxeterMatrix::from_upper(t.into(), 2, &[None]);
        }
        if let Some(m) = t.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let v: u32 = m.parse().map_err(|_| bad())?;
            return CoxeterMatrix::from_upper(t.into(), 2, &[Some(v)]);
        }
        if t.contains(',') || t.chars().all(|c| c.is_ascii_digit()) {
            let upper = t
                .split(',')
                .map(|e| match e.trim() {
                    "inf" => Ok(None),
                    e => e.parse::<u32>().map(Some).map_err(|_| bad()),
                })
                .collect::<Result<Vec<_>>>()?;
            let rank = (1..=16)
                .find(|r| r * (r - 1) / 2 == upper.len())
                .ok_or_else(bad)?;
            return CoxeterMatrix::from_upper(t.into(), rank, &upper);
        }
        let (family, rank) = t.split_at(1);
        let rank: usize = rank.parse().map_err(|_| bad())?;
        match (family, rank) {
            ("A", 1..=6) => CoxeterMatrix::chain(t, rank, &[]),
            ("B", 2..=6) => CoxeterMatrix::chain(t, rank, &[(0, 1, 4)]),
            ("D", 4..=6) => {
                // Branch node 1 carries the legs 0, 2 and 3; 3 continues the chain.
                let mut special = vec![(1, 2, 3), (2, 3, 2), (1, 3, 3)];
                for i in 3..rank - 1 {
                    special.push((i, i + 1, 3));
                }
                CoxeterMatrix::chain(t, rank, &special)
            }
            ("G", 2) => CoxeterMatrix::chain(t, 2, &[(0, 1, 6)]),
            ("F", 4) => CoxeterMatrix::chain(t, 4, &[(1, 2, 4)]),
            _ => Err(bad()),
        }
    }

    /// Positive definiteness of the Schläfli matrix `-cos(π/m)`, which
    /// characterizes finite Coxeter groups.
    pub fn is_finite(&self) -> bool {
        let n = self.rank();
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match self.m[i][j] {
                        _ if i == j => 1.0,
                        Some(v) => -(PI / v as f64).cos(),
                        None => -1.0,
                    })
                    .collect()
            })
            .collect();
        // Gaussian elimination; every pivot must stay positive.
        for k in 0..n {
            if a[k][k] <= 1e-9 {
                return false;
            }
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
        true
    }
}

/// The Artin–Tits monoid of a Coxeter matrix. Garside data is built for
/// finite types, with Δ the lcm of the atoms.
pub fn artin_tits(matrix: &CoxeterMatrix) -> Result<CatalogEntry> {
    let n = matrix.rank();
    if n == 0 || n > 26 {
        return Err(Error::OutOfRange(format!(
            "Coxeter rank {n} outside 1..=26"
        )));
    }
    let names: Vec<String> = (0..n).map(letter).collect();
    let mut p = Presentation::monoid(&names)?;
    for i in 0..n {
        for j in i + 1..n {
            if let Some(m) = matrix.m[i][j] {
                let alt = |a: usize, b: usize| {
                    (0..m as usize)
                        .map(|k| if k % 2 == 0 { a } else { b })
                        .collect::<Vec<_>>()
                };
                let (l, r) = (p.word(&alt(i, j))?, p.word(&alt(j, i))?);
                p.add_relation(l, r)?;
            }
        }
    }
    let mut limits = crate::category::Limits::default();
    limits.divisor_budget = MAX_SIMPLES;
    let context = CategoryContext::with_limits(p, limits);
    let key = format!("artin:{}", matrix.name);
    if !matrix.is_finite() {
        return Ok(CatalogEntry {
            key,
            provenance: format!(
                "Artin–Tits monoid of type {}; infinite Coxeter group, no Garside map",
                matrix.name
            ),
            context,
            family: None,
            map: None,
            germ: None,
            unbounded: None,
        });
    }
    let mut delta = context.identity(ObjectId(0));
    for g in 0..n {
        delta = right_lcm(&context, &delta, &context.presentation().word(&[g])?)?;
    }
    let delta = context.canonical(&delta)?;
    let map = match garside_map_for_delta(&context, std::slice::from_ref(&delta))? {
        Boundedness::Bounded(m) => *m,
        Boundedness::Unbounded(c) => {
            return Err(Error::OutOfRange(format!(
                "type {} too large for the simple table: {}",
                matrix.name, c.reason
            )))
        }
    };
    Ok(CatalogEntry {
        key,
        provenance: format!(
            "Artin–Tits monoid of type {}; Δ = {} is the lcm of the atoms",
            matrix.name,
            context.presentation().display_compact(&delta.letters)
        ),
        family: Some(map.family()),
        germ: Some(germ_of_map(&map)?),
        map: Some(map),
        context,
        unbounded: None,
    })
}

/// ⟨a, b | a = bab⟩: Ore but not Noetherian, with no finite Garside map
/// over {a, b}.
pub fn klein_bottle() -> Result<CatalogEntry> {
    let mut p = Presentation::monoid(&["a", "b"])?;
    let (l, r) = (p.parse_word("a")?, p.parse_word("b a b")?);
    p.add_relation(l, r)?;
    let context = CategoryContext::new(p);
    let slice = [context.word("a")?, context.word("b")?];
    let family = GarsideFamily::new(&context, &slice)?;
    let unbounded = match build_garside_map(&context, &family)? {
        Boundedness::Unbounded(c) => c,
        Boundedness::Bounded(_) => {
            return Err(Error::Validation(
                "Klein bottle monoid came out bounded".into(),
            ))
        }
    };
    Ok(CatalogEntry {
        key: "klein".into(),
        provenance: format!(
            "Klein bottle monoid <a, b | a = bab>; bounded search over {{a, b}}: {}",
            unbounded.reason
        ),
        context,
        family: None,
        map: None,
        germ: None,
        unbounded: Some(unbounded),
    })
}

/// Builds an entry from a user germ with one object: the atoms become the
/// generators and Δ is the element every other element divides.
pub fn from_garside_germ(key: &str, germ: &Germ) -> Result<CatalogEntry> {
    if germ.objects().len() != 1 {
        return Err(Error::Unsupported(
            "germ presentations over atoms need a single object".into(),
        ));
    }
    if let crate::germ::GermValidity::Violation(v) = crate::germ::validate_germ(germ) {
        return Err(Error::Validation(format!(
            "invalid germ: {}",
            v.describe(germ)
        )));
    }
    let witness = crate::germ::is_garside_germ(germ);
    if let crate::germ::GermVerdict::NotGarside(why) = &witness.verdict {
        return Err(Error::Validation(format!("not a Garside germ: {why}")));
    }
    let delta = (0..germ.len())
        .find(|&d| (0..germ.len()).all(|x| germ.left_divides(x, d)))
        .ok_or_else(|| Error::Unsupported("the germ has no greatest element".into()))?;
    let atoms: Vec<(usize, String)> = germ
        .atoms()
        .into_iter()
        .map(|a| (a, germ.name(a).to_string()))
        .collect();
    from_germ(
        key.to_string(),
        "user germ".into(),
        germ.clone(),
        &atoms,
        delta,
    )
}

fn letter(i: usize) -> String {
    char::from(b'a' + i as u8).to_string()
}

fn perm_names(perms: &[Vec<usize>]) -> Vec<String> {
    perms
        .iter()
        .map(|p| {
            p.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("_")
        })
        .collect()
}

/// Presentation and Garside map for a Garside germ of one object, given
/// its atoms with generator names and the element playing Δ.
fn from_germ(
    key: String,
    provenance: String,
    germ: Germ,
    atoms: &[(usize, String)],
    delta: usize,
) -> Result<CatalogEntry> {
    let n = germ.len();
    let names: Vec<&str> = atoms.iter().map(|(_, s)| s.as_str()).collect();
    let mut p = Presentation::monoid(&names)?;
    let id = germ.identity_at(ObjectId(0));

    // Lexicographically least atom word of every element, by greedy
    // extraction of the smallest atom.
    let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
    words[id] = Some(Vec::new());
    let mut order: Vec<usize> = (0..n).collect();
    let height = germ
        .additive_height()
        .ok_or_else(|| Error::Validation("germ without additive height".into()))?;
    order.sort_by_key(|&x| height[x]);
    for &x in &order {
        if x == id {
            continue;
        }
        let (g, rest) = atoms
            .iter()
            .enumerate()
            .find_map(|(g, &(a, _))| germ.quotient(a, x).map(|q| (g, q)))
            .ok_or_else(|| {
                Error::Validation(format!("element {} has no atom divisor", germ.name(x)))
            })?;
        let mut w = vec![g];
        w.extend(words[rest].clone().expect("shorter elements done first"));
        words[x] = Some(w);
    }
    let words: Vec<Vec<usize>> = words
        .into_iter()
        .map(|w| w.expect("all elements reached"))
        .collect();

    // One relation per atom pair, from their lcm inside the germ.
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            let (a, b) = (atoms[i].0, atoms[j].0);
            let lcm = (0..n)
                .filter(|&x| germ.left_divides(a, x) && germ.left_divides(b, x))
                .min_by_key(|&x| height[x])
                .ok_or_else(|| {
                    Error::Validation("atoms without a common multiple in the germ".into())
                })?;
            let qa = germ.quotient(a, lcm).unwrap();
            let qb = germ.quotient(b, lcm).unwrap();
            let lhs: Vec<usize> = std::iter::once(i)
                .chain(words[qa].iter().copied())
                .collect();
            let rhs: Vec<usize> = std::iter::once(j)
                .chain(words[qb].iter().copied())
                .collect();
            let (l, r) = (p.word(&lhs)?, p.word(&rhs)?);
            p.add_relation(l, r)?;
        }
    }
    let context = CategoryContext::new(p);
    let word_list: Vec<Word> = words
        .iter()
        .map(|w| context.presentation().word(w))
        .collect::<Result<_>>()?;
    let mut succ = vec![vec![None; atoms.len()]; n];
    for (x, row) in succ.iter_mut().enumerate() {
        for (g, &(a, _)) in atoms.iter().enumerate() {
            row[g] = germ.product(x, a);
        }
    }
    let map = GarsideMap::from_parts(&context, word_list, succ, vec![delta])?;
    let renamed = germ.renamed((0..n).map(|x| element_name(&context, &words[x])).collect())?;
    Ok(CatalogEntry {
        key,
        provenance,
        family: Some(map.family()),
        map: Some(map),
        germ: Some(renamed),
        context,
        unbounded: None,
    })
}

fn element_name(ctx: &CategoryContext, letters: &[usize]) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    let p = ctx.presentation();
    let single = p.generators().iter().all(|g| g.name.chars().count() == 1);
    let parts: Vec<&str> = letters
        .iter()
        .map(|&g| p.generator(g).name.as_str())
        .collect();
    parts.join(if single { "" } else { "_" })
}

/// The germ of simples of a one-object Garside map, with atom products.
fn germ_of_map(map: &GarsideMap) -> Result<Germ> {
    let n = map.simple_count();
    let elements: Vec<(String, ObjectId, ObjectId)> = (0..n)
        .map(|s| {
            (
                if map.is_identity(s) {
                    "1".into()
                } else {
                    map.label(s).to_string()
                },
                map.source(s),
                map.target(s),
            )
        })
        .collect();
    let mut products = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if let Some(u) = map.product(s, t) {
                if !map.is_identity(s) && !map.is_identity(t) {
                    products.push((s, t, u));
                }
            }
        }
    }
    let id = map.identity(ObjectId(0));
    Germ::new(vec!["*".into()], elements, vec![id], &products)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(e: &CatalogEntry) -> usize {
        e.map.as_ref().unwrap().simple_count()
    }

    fn delta(e: &CatalogEntry) -> String {
        let m = e.map.as_ref().unwrap();
        m.label(m.delta(ObjectId(0))).to_string()
    }

    #[test]
    fn free_abelian_entries() {
        let e = free_abelian(2).unwrap();
        assert_eq!((count(&e), delta(&e).as_str()), (4, "xy"));
        let e = free_abelian(1).unwrap();
        assert_eq!((count(&e), delta(&e).as_str()), (2, "x"));
        assert_eq!(count(&free_abelian(3).unwrap()), 8);
        assert!(matches!(free_abelian(0), Err(Error::OutOfRange(_))));
        assert!(matches!(free_abelian(9), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn braid_entries() {
        let e = braid_classical(3).unwrap();
        assert_eq!((count(&e), delta(&e).as_str()), (6, "aba"));
        let rels: Vec<String> = e
            .context
            .presentation()
            .relations()
            .iter()
            .map(|(l, r)| {
                format!(
                    "{} = {}",
                    e.context.presentation().display_word(l),
                    e.context.presentation().display_word(r)
                )
            })
            .collect();
        assert_eq!(rels, ["a b a = b a b"]);
        let e = braid_classical(2).unwrap();
        assert_eq!((count(&e), delta(&e).as_str()), (2, "a"));
        let e = braid_classical(4).unwrap();
        assert_eq!((count(&e), delta(&e).len()), (24, 6));
        assert!(matches!(braid_classical(7), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn dual_entries() {
        assert_eq!(count(&braid_dual(2).unwrap()), 2);
        assert_eq!(count(&braid_dual(3).unwrap()), 5);
        assert_eq!(count(&braid_dual(4).unwrap()), 14);
        assert!(braid_dual(4).unwrap().context.is_complete());
    }

    #[test]
    fn artin_entries() {
        let e = artin_tits(&CoxeterMatrix::parse("B2").unwrap()).unwrap();
        assert_eq!((count(&e), delta(&e).len()), (8, 4));
        let e = artin_tits(&CoxeterMatrix::parse("A~1").unwrap()).unwrap();
        assert!(e.map.is_none());
        assert!(!CoxeterMatrix::parse("3,3,3").unwrap().is_finite());
        assert!(CoxeterMatrix::parse("D4").unwrap().is_finite());
        assert!(CoxeterMatrix::parse("F4").unwrap().is_finite());
        assert!(!CoxeterMatrix::parse("1,2").is_ok());
        assert_eq!(
            CoxeterMatrix::parse("3,2,3").unwrap().m,
            CoxeterMatrix::parse("A3").unwrap().m
        );
        let e = lookup("artin:G2").unwrap();
        assert_eq!(count(&e), 12);
    }

    #[test]
    fn klein_entry() {
        let e = klein_bottle().unwrap();
        let c = &e.context;
        assert!(!c.is_noetherian());
        assert!(e.unbounded.is_some());
        assert!(c
            .equal(&c.word("a").unwrap(), &c.word("bab").unwrap())
            .unwrap());
        assert!(!c
            .equal(&c.word("ab").unwrap(), &c.word("ba").unwrap())
            .unwrap());
        assert!(c
            .left_divides(&c.word("bb").unwrap(), &c.word("a").unwrap())
            .unwrap());
    }

    #[test]
    fn lookup_keys() {
        for k in keys() {
            assert_eq!(lookup(k).unwrap().key, k);
        }
        assert!(lookup("nope").is_err());
        assert!(lookup("braid:x").is_err());
    }
}
