//! Objects, generators, words and presentations.
//!
//! Words are paths in the free category on the generators. They are plain
//! syntax: equality of two `Word` values is letter-by-letter, and the
//! presented congruence lives in [`crate::category::CategoryContext`].

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of an object of the ambient category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ObjectId(pub usize);

/// Generator ids are dense indices into [`Presentation::generators`].
pub type GenId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    pub source: ObjectId,
    pub target: ObjectId,
}

/// A composable path of generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub letters: Vec<GenId>,
    pub source: ObjectId,
    pub target: ObjectId,
}

impl Word {
    pub fn empty(object: ObjectId) -> Self {
        Word {
            letters: Vec::new(),
            source: object,
            target: object,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Free-category composition `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.target != other.source {
            return Err(Error::Composition(format!(
                "target {} of left word differs from source {} of right word",
                self.target.0, other.source.0
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            letters,
            source: self.source,
            target: other.target,
        })
    }

    pub fn to_signed(&self) -> SignedWord {
        SignedWord {
            letters: self.letters.iter().map(|&g| (g, Sign::Pos)).collect(),
            source: self.source,
            target: self.target,
        }
    }

    pub fn inverse(&self) -> SignedWord {
        SignedWord {
            letters: self.letters.iter().rev().map(|&g| (g, Sign::Neg)).collect(),
            source: self.target,
            target: self.source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

/// A path of generators and formal inverses. A negative letter `s⁻¹` is
/// traversed from `target(s)` to `source(s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    pub letters: Vec<(GenId, Sign)>,
    pub source: ObjectId,
    pub target: ObjectId,
}

impl SignedWord {
    pub fn empty(object: ObjectId) -> Self {
        SignedWord {
            letters: Vec::new(),
            source: object,
            target: object,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&(_, s)| s == Sign::Pos)
    }

    pub fn concat(&self, other: &SignedWord) -> Result<SignedWord> {
        if self.target != other.source {
            return Err(Error::Composition(format!(
                "target {} of left word differs from source {} of right word",
                self.target.0, other.source.0
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(SignedWord {
            letters,
            source: self.source,
            target: other.target,
        })
    }

    pub fn inverse(&self) -> SignedWord {
        SignedWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(g, s)| (g, if s == Sign::Pos { Sign::Neg } else { Sign::Pos }))
                .collect(),
            source: self.target,
            target: self.source,
        }
    }

    /// Drops adjacent `s s⁻¹` and `s⁻¹ s` pairs.
    pub fn free_reduce(&self) -> SignedWord {
        let mut out: Vec<(GenId, Sign)> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&(g, s)) if g == l.0 && s != l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        SignedWord {
            letters: out,
            source: self.source,
            target: self.target,
        }
    }
}

/// Generators with source/target objects plus positive relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    objects: Vec<String>,
    generators: Vec<Generator>,
    relations: Vec<(Word, Word)>,
    by_name: HashMap<String, GenId>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    /// One-object presentation with the given generator names and no relations.
    pub fn monoid<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut p = Presentation::with_objects(vec!["*".to_string()]);
        for n in names {
            p.add_generator(n.as_ref(), ObjectId(0), ObjectId(0))?;
        }
        Ok(p)
    }

    pub fn with_objects(objects: Vec<String>) -> Self {
        Presentation {
            objects,
            generators: Vec::new(),
            relations: Vec::new(),
            by_name: HashMap::new(),
        }
    }

    pub fn add_generator(
        &mut self,
        name: &str,
        source: ObjectId,
        target: ObjectId,
    ) -> Result<GenId> {
        if !valid_name(name) {
            return Err(Error::Validation(format!(
                "invalid generator name `{name}`"
            )));
        }
        if self.by_name.contains_key(name) {
            return Err(Error::Validation(format!("duplicate generator `{name}`")));
        }
        if source.0 >= self.objects.len() || target.0 >= self.objects.len() {
            return Err(Error::Validation(format!(
                "generator `{name}` uses an unknown object"
            )));
        }
        let id = self.generators.len();
        self.generators.push(Generator {
            id,
            name: name.to_string(),
            source,
            target,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_relation(&mut self, lhs: Word, rhs: Word) -> Result<()> {
        if lhs.source != rhs.source || lhs.target != rhs.target {
            return Err(Error::Composition(
                "relation sides have different endpoints".into(),
            ));
        }
        self.relations.push((lhs, rhs));
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.generators[id]
    }

    pub fn generator_id(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn is_monoid(&self) -> bool {
        self.objects.len() == 1
    }

    /// Builds a word from letters, checking composability.
    pub fn word(&self, letters: &[GenId]) -> Result<Word> {
        let source = match letters.first() {
            Some(&g) => self.gen_checked(g)?.source,
            None => ObjectId(0),
        };
        self.word_from(source, letters)
    }

    /// Like [`Presentation::word`] but with an explicit source, so that the
    /// empty word can sit at any object.
    pub fn word_from(&self, source: ObjectId, letters: &[GenId]) -> Result<Word> {
        let mut cur = source;
        for &g in letters {
            let gen = self.gen_checked(g)?;
            if gen.source != cur {
                return Err(Error::Composition(format!(
                    "letter `{}` starts at object {} but the path is at {}",
                    gen.name, gen.source.0, cur.0
                )));
            }
            cur = gen.target;
        }
        Ok(Word {
            letters: letters.to_vec(),
            source,
            target: cur,
        })
    }

    pub fn signed_word_from(
        &self,
        source: ObjectId,
        letters: &[(GenId, Sign)],
    ) -> Result<SignedWord> {
        let mut cur = source;
        for &(g, s) in letters {
            let gen = self.gen_checked(g)?;
            let (from, to) = match s {
                Sign::Pos => (gen.source, gen.target),
                Sign::Neg => (gen.target, gen.source),
            };
            if from != cur {
                return Err(Error::Composition(format!(
                    "letter `{}` does not compose",
                    gen.name
                )));
            }
            cur = to;
        }
        Ok(SignedWord {
            letters: letters.to_vec(),
            source,
            target: cur,
        })
    }

    pub fn signed_word(&self, letters: &[(GenId, Sign)]) -> Result<SignedWord> {
        let source = match letters.first() {
            Some(&(g, Sign::Pos)) => self.gen_checked(g)?.source,
            Some(&(g, Sign::Neg)) => self.gen_checked(g)?.target,
            None => ObjectId(0),
        };
        self.signed_word_from(source, letters)
    }

    fn gen_checked(&self, g: GenId) -> Result<&Generator> {
        self.generators
            .get(g)
            .ok_or_else(|| Error::Validation(format!("unknown generator id {g}")))
    }

    fn single_char_names(&self) -> bool {
        self.generators.iter().all(|g| g.name.chars().count() == 1)
    }

    /// Splits a textual word into generator tokens. Tokens are separated by
    /// whitespace; juxtaposed letters (`abab`) are accepted only when every
    /// generator name is a single character.
    fn tokens(&self, text: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for chunk in text.split_whitespace() {
            if chunk == "1" && self.generator_id("1").is_none() {
                continue;
            }
            let base = chunk.strip_suffix("^-1").unwrap_or(chunk);
            if self.generator_id(base).is_some() {
                out.push(chunk.to_string());
            } else if self.single_char_names() && base.chars().count() > 1 {
                // Juxtaposed letters, each optionally followed by `^-1`.
                let mut rest = chunk;
                while let Some(c) = rest.chars().next() {
                    rest = &rest[c.len_utf8()..];
                    let mut t = c.to_string();
                    if let Some(r) = rest.strip_prefix("^-1") {
                        t.push_str("^-1");
                        rest = r;
                    }
                    out.push(t);
                }
            } else {
                return Err(Error::Validation(format!("unknown generator `{base}`")));
            }
        }
        Ok(out)
    }

    /// Parses a positive word such as `"a b a"` (or `"aba"` when every
    /// generator name is one character). `""` and `"1"` denote the empty word
    /// at object 0.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for t in self.tokens(text)? {
            if t.ends_with("^-1") {
                return Err(Error::Validation(format!(
                    "negative letter `{t}` in a positive word"
                )));
            }
            letters.push(
                self.generator_id(&t)
                    .ok_or_else(|| Error::Validation(format!("unknown generator `{t}`")))?,
            );
        }
        self.word(&letters)
    }

    /// Parses a signed word; negative letters are written `a^-1`.
    pub fn parse_signed_word(&self, text: &str) -> Result<SignedWord> {
        let mut letters = Vec::new();
        for t in self.tokens(text)? {
            let (base, sign) = match t.strip_suffix("^-1") {
                Some(b) => (b.to_string(), Sign::Neg),
                None => (t.clone(), Sign::Pos),
            };
            let g = self
                .generator_id(&base)
                .ok_or_else(|| Error::Validation(format!("unknown generator `{base}`")))?;
            letters.push((g, sign));
        }
        self.signed_word(&letters)
    }

    /// Space-separated tokens; the empty word prints as `1`.
    pub fn display_word(&self, w: &Word) -> String {
        self.display_letters(&w.letters)
    }

    pub fn display_letters(&self, letters: &[GenId]) -> String {
        if letters.is_empty() {
            return "1".to_string();
        }
        letters
            .iter()
            .map(|&g| self.generators[g].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Compact rendering used inside normal forms: names are juxtaposed when
    /// they are all single characters.
    pub fn display_compact(&self, letters: &[GenId]) -> String {
        if letters.is_empty() {
            return "1".to_string();
        }
        let sep = if self.single_char_names() { "" } else { " " };
        letters
            .iter()
            .map(|&g| self.generators[g].name.as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn display_signed(&self, w: &SignedWord) -> String {
        if w.letters.is_empty() {
            return "1".to_string();
        }
        w.letters
            .iter()
            .map(|&(g, s)| match s {
                Sign::Pos => self.generators[g].name.clone(),
                Sign::Neg => format!("{}^-1", self.generators[g].name),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The opposite presentation: every generator reversed, every relation
    /// read backwards. Generator ids are preserved.
    pub fn mirror(&self) -> Presentation {
        let mut p = Presentation::with_objects(self.objects.clone());
        for g in &self.generators {
            p.generators.push(Generator {
                id: g.id,
                name: g.name.clone(),
                source: g.target,
                target: g.source,
            });
            p.by_name.insert(g.name.clone(), g.id);
        }
        for (l, r) in &self.relations {
            p.relations.push((mirror_word(l), mirror_word(r)));
        }
        p
    }

    /// True when every relation has sides of equal length.
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|(l, r)| l.len() == r.len())
    }
}

pub fn mirror_word(w: &Word) -> Word {
    Word {
        letters: w.letters.iter().rev().copied().collect(),
        source: w.target,
        target: w.source,
    }
}

pub fn mirror_signed(w: &SignedWord) -> SignedWord {
    SignedWord {
        letters: w.letters.iter().rev().copied().collect(),
        source: w.target,
        target: w.source,
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
