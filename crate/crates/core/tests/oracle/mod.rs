//! Test-only oracles. Nothing here calls into the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

/// Congruence classes of all words up to `max_len` for a homogeneous
/// presentation, by union-find over single relation applications.
pub struct Rewriting {
    n: usize,
    max_len: usize,
    offsets: Vec<usize>,
    parent: Vec<u32>,
    members: HashMap<u32, Vec<u32>>,
}

impl Rewriting {
    pub fn new(n: usize, relations: &[(&[u8], &[u8])], max_len: usize) -> Self {
        for (l, r) in relations {
            assert_eq!(l.len(), r.len(), "oracle needs homogeneous relations");
        }
        let mut offsets = vec![0usize];
        for len in 0..=max_len {
            offsets.push(offsets[len] + n.pow(len as u32));
        }
        let total = offsets[max_len + 1];
        let mut parent: Vec<u32> = (0..total as u32).collect();
        let mut buf = Vec::with_capacity(max_len);
        for len in 1..=max_len {
            for code in 0..n.pow(len as u32) {
                decode(n, len, code, &mut buf);
                let me = offsets[len] + code;
                for i in 0..len {
                    for (l, r) in relations.iter().flat_map(|(l, r)| [(l, r), (r, l)]) {
                        if i + l.len() <= len && &buf[i..i + l.len()] == *l {
                            let mut other = buf.clone();
                            other[i..i + r.len()].copy_from_slice(r);
                            let them = offsets[len] + encode(n, &other);
                            union(&mut parent, me as u32, them as u32);
                        }
                    }
                }
            }
        }
        let mut members: HashMap<u32, Vec<u32>> = HashMap::new();
        for i in 0..total as u32 {
            let r = find(&mut parent, i);
            members.entry(r).or_default().push(i);
        }
        Rewriting {
            n,
            max_len,
            offsets,
            parent,
            members,
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn index(&self, w: &[u8]) -> u32 {
        assert!(w.len() <= self.max_len, "word longer than the oracle range");
        (self.offsets[w.len()] + encode(self.n, w)) as u32
    }

    fn word_of(&self, i: u32) -> Vec<u8> {
        let i = i as usize;
        let len = (0..=self.max_len)
            .rev()
            .find(|&l| self.offsets[l] <= i)
            .unwrap();
        let mut buf = Vec::new();
        decode(self.n, len, i - self.offsets[len], &mut buf);
        buf
    }

    pub fn class(&self, w: &[u8]) -> u32 {
        let mut i = self.index(w);
        while self.parent[i as usize] != i {
            i = self.parent[i as usize];
        }
        i
    }

    pub fn equal(&self, u: &[u8], v: &[u8]) -> bool {
        u.len() == v.len() && self.class(u) == self.class(v)
    }

    pub fn members(&self, w: &[u8]) -> Vec<Vec<u8>> {
        self.members[&self.class(w)]
            .iter()
            .map(|&i| self.word_of(i))
            .collect()
    }

    /// `u ≤ v`: some spelling of `v` starts with a spelling of `u`.
    pub fn left_divides(&self, u: &[u8], v: &[u8]) -> bool {
        if u.len() > v.len() {
            return false;
        }
        let cu = self.class(u);
        self.members(v)
            .iter()
            .any(|m| self.class(&m[..u.len()]) == cu)
    }

    /// `u` right-divides `v`: some spelling of `v` ends with a spelling of `u`.
    pub fn right_divides(&self, u: &[u8], v: &[u8]) -> bool {
        if u.len() > v.len() {
            return false;
        }
        let cu = self.class(u);
        self.members(v)
            .iter()
            .any(|m| self.class(&m[m.len() - u.len()..]) == cu)
    }

    /// Classes of left divisors of `v`, one representative each.
    pub fn left_divisors(&self, v: &[u8]) -> Vec<Vec<u8>> {
        let mut seen = HashMap::new();
        for m in self.members(v) {
            for k in 0..=m.len() {
                seen.entry(self.class(&m[..k]))
                    .or_insert_with(|| m[..k].to_vec());
            }
        }
        seen.into_values().collect()
    }
}

fn find(parent: &mut [u32], mut i: u32) -> u32 {
    while parent[i as usize] != i {
        parent[i as usize] = parent[parent[i as usize] as usize];
        i = parent[i as usize];
    }
    i
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi as usize] = lo;
    }
}

fn encode(n: usize, w: &[u8]) -> usize {
    w.iter().fold(0, |acc, &x| acc * n + x as usize)
}

fn decode(n: usize, len: usize, mut code: usize, buf: &mut Vec<u8>) {
    buf.clear();
    buf.resize(len, 0);
    for i in (0..len).rev() {
        buf[i] = (code % n) as u8;
        code /= n;
    }
}

/// All words over `n` letters with length at most `max_len`, shortest first.
pub fn all_words(n: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..n as u8 {
                let mut v: Vec<u8> = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Laurent polynomial in `t` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent(BTreeMap<i32, i64>);

impl Laurent {
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Laurent(m)
    }

    fn add(&self, o: &Laurent) -> Laurent {
        let mut m = self.0.clone();
        for (&e, &c) in &o.0 {
            let v = m.entry(e).or_insert(0);
            *v += c;
            if *v == 0 {
                m.remove(&e);
            }
        }
        Laurent(m)
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &o.0 {
                out = out.add(&Laurent::monomial(c1 * c2, e1 + e2));
            }
        }
        out
    }
}

/// 2×2 matrix of the reduced Burau representation of B₃, which is faithful.
pub type Matrix = [[Laurent; 2]; 2];

pub fn identity() -> Matrix {
    [
        [Laurent::monomial(1, 0), Laurent::default()],
        [Laurent::default(), Laurent::monomial(1, 0)],
    ]
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cell = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

/// Image of σ₁ (`gen = 0`) or σ₂ (`gen = 1`), or of their inverses.
pub fn burau(gen: u8, positive: bool) -> Matrix {
    let m = Laurent::monomial;
    let z = Laurent::default;
    match (gen, positive) {
        (0, true) => [[m(-1, 1), m(1, 0)], [z(), m(1, 0)]],
        (0, false) => [[m(-1, -1), m(1, -1)], [z(), m(1, 0)]],
        (1, true) => [[m(1, 0), z()], [m(1, 1), m(-1, 1)]],
        (1, false) => [[m(1, 0), z()], [m(1, 0), m(-1, -1)]],
        _ => panic!("B₃ has two generators"),
    }
}

/// Image of a signed word given as `(generator, positive)` pairs.
pub fn burau_word(w: &[(u8, bool)]) -> Matrix {
    w.iter()
        .fold(identity(), |acc, &(g, p)| mat_mul(&acc, &burau(g, p)))
}

/// Freely reduced signed words over two generators, up to `max_len`.
pub fn signed_words(max_len: usize) -> Vec<Vec<(u8, bool)>> {
    let letters = [(0u8, true), (0, false), (1, true), (1, false)];
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<(u8, bool)>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last().is_some_and(|&(g, p)| g == l.0 && p != l.1) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn inverse_word(w: &[(u8, bool)]) -> Vec<(u8, bool)> {
    w.iter().rev().map(|&(g, p)| (g, !p)).collect()
}
