//! The two text formats: structure files (a presentation with optional
//! Garside data) and germ files (a finite partial product table).
//!
//! Both are line oriented with `[section]` headers; `#` starts a comment.
//! Emission is canonical, so emitting a parsed file and parsing it again
//! gives the same structure.

use garside::germ::Germ;
use garside::{ObjectId, Presentation, Word};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// How the `[garside]` section names the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GarsideSpec {
    Family(Vec<Word>),
    /// One Δ per object, in object order.
    Delta(Vec<Word>),
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFile {
    pub presentation: Presentation,
    pub garside: Option<GarsideSpec>,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

/// Splits into `(section, lines)` pairs, dropping comments and blank lines.
fn sections<'a>(
    text: &'a str,
    allowed: &[&str],
) -> Result<Vec<(String, Vec<Line<'a>>)>, FormatError> {
    let mut out: Vec<(String, Vec<Line<'a>>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim();
            if !allowed.contains(&name) {
                return err(number, format!("unknown section [{name}]"));
            }
            if out.iter().any(|(s, _)| s == name) {
                return err(number, format!("section [{name}] appears twice"));
            }
            out.push((name.to_string(), Vec::new()));
            continue;
        }
        match out.last_mut() {
            Some((_, lines)) => lines.push(Line { number, text: body }),
            None => return err(number, "text before the first section"),
        }
    }
    Ok(out)
}

fn take<'a, 'b>(secs: &'b [(String, Vec<Line<'a>>)], name: &str) -> &'b [Line<'a>] {
    secs.iter()
        .find(|(s, _)| s == name)
        .map(|(_, l)| l.as_slice())
        .unwrap_or(&[])
}

fn parse_objects(lines: &[Line]) -> Result<Vec<String>, FormatError> {
    let mut objects: Vec<String> = Vec::new();
    for l in lines {
        for name in l.text.split_whitespace() {
            if objects.iter().any(|o| o == name) {
                return err(l.number, format!("duplicate object `{name}`"));
            }
            objects.push(name.to_string());
        }
    }
    if objects.is_empty() {
        objects.push("*".into());
    }
    Ok(objects)
}

fn object_id(objects: &[String], name: &str, line: usize) -> Result<ObjectId, FormatError> {
    objects
        .iter()
        .position(|o| o == name)
        .map(ObjectId)
        .ok_or(FormatError {
            line,
            message: format!("unknown object `{name}`"),
        })
}

/// `name : src -> tgt`, or a bare name when there is one object.
fn parse_arrow(
    objects: &[String],
    l: &Line,
) -> Result<Vec<(String, ObjectId, ObjectId)>, FormatError> {
    match l.text.split_once(':') {
        Some((name, ends)) => {
            let name = name.trim();
            let Some((s, t)) = ends.split_once("->") else {
                return err(l.number, format!("expected `{name} : source -> target`"));
            };
            let s = object_id(objects, s.trim(), l.number)?;
            let t = object_id(objects, t.trim(), l.number)?;
            Ok(vec![(name.to_string(), s, t)])
        }
        None if objects.len() == 1 => Ok(l
            .text
            .split_whitespace()
            .map(|n| (n.to_string(), ObjectId(0), ObjectId(0)))
            .collect()),
        None => err(
            l.number,
            format!("`{}` needs endpoints `: source -> target`", l.text),
        ),
    }
}

fn parse_word_at(p: &Presentation, text: &str, line: usize) -> Result<Word, FormatError> {
    p.parse_word(text.trim()).map_err(|e| FormatError {
        line,
        message: e.to_string(),
    })
}

pub fn parse_structure(text: &str) -> Result<StructureFile, FormatError> {
    let secs = sections(text, &["objects", "generators", "relations", "garside"])?;
    let objects = parse_objects(take(&secs, "objects"))?;
    let mut p = Presentation::with_objects(objects.clone());
    for l in take(&secs, "generators") {
        for (name, s, t) in parse_arrow(&objects, l)? {
            p.add_generator(&name, s, t).map_err(|e| FormatError {
                line: l.number,
                message: e.to_string(),
            })?;
        }
    }
    for l in take(&secs, "relations") {
        let Some((lhs, rhs)) = l.text.split_once('=') else {
            return err(l.number, "expected `lhs = rhs`");
        };
        let lhs = parse_word_at(&p, lhs, l.number)?;
        let rhs = parse_word_at(&p, rhs, l.number)?;
        p.add_relation(lhs, rhs).map_err(|e| FormatError {
            line: l.number,
            message: e.to_string(),
        })?;
    }
    let mut garside = None;
    let gl = take(&secs, "garside");
    if let Some(first) = gl.first() {
        if gl.len() > 1 && !gl.iter().all(|l| l.text.starts_with("delta")) {
            return err(
                gl[1].number,
                "[garside] takes one of `family:`, `delta:` or `auto`",
            );
        }
        if first.text == "auto" {
            garside = Some(GarsideSpec::Auto);
        } else if let Some(rest) = first.text.strip_prefix("family:") {
            let words = rest
                .split(',')
                .filter(|w| !w.trim().is_empty())
                .map(|w| parse_word_at(&p, w, first.number))
                .collect::<Result<Vec<_>, _>>()?;
            garside = Some(GarsideSpec::Family(words));
        } else if first.text.starts_with("delta") {
            garside = Some(GarsideSpec::Delta(parse_deltas(&p, &objects, gl)?));
        } else {
            return err(
                first.number,
                format!("unrecognised [garside] line `{}`", first.text),
            );
        }
    }
    Ok(StructureFile {
        presentation: p,
        garside,
    })
}

/// `delta: w` in the one-object case, `delta OBJ: w` per object otherwise.
fn parse_deltas(
    p: &Presentation,
    objects: &[String],
    lines: &[Line],
) -> Result<Vec<Word>, FormatError> {
    let mut deltas: Vec<Option<Word>> = vec![None; objects.len()];
    for l in lines {
        let Some((head, word)) = l.text.split_once(':') else {
            return err(l.number, "expected `delta: word`");
        };
        let obj = match head.trim().strip_prefix("delta").map(str::trim) {
            Some("") if objects.len() == 1 => ObjectId(0),
            Some("") => return err(l.number, "name the object: `delta OBJ: word`"),
            Some(name) => object_id(objects, name, l.number)?,
            None => return err(l.number, "expected `delta: word`"),
        };
        let w = parse_word_at(p, word, l.number)?;
        let w = if w.is_empty() { Word::empty(obj) } else { w };
        if w.source != obj || w.target != obj {
            return err(l.number, "Δ must be a loop at its object");
        }
        deltas[obj.0] = Some(w);
    }
    deltas
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            d.ok_or(FormatError {
                line: lines[0].number,
                message: format!("no Δ for object `{}`", objects[i]),
            })
        })
        .collect()
}

fn single_object(objects: &[String]) -> bool {
    objects.len() == 1 && objects[0] == "*"
}

pub fn emit_structure(s: &StructureFile) -> String {
    let p = &s.presentation;
    let mut out = String::new();
    let objects = p.objects();
    let plain = single_object(objects);
    if !plain {
        out.push_str("[objects]\n");
        for o in objects {
            out.push_str(o);
            out.push('\n');
        }
        out.push('\n');
    }
    out.push_str("[generators]\n");
    for g in p.generators() {
        if plain {
            out.push_str(&format!("{}\n", g.name));
        } else {
            out.push_str(&format!(
                "{} : {} -> {}\n",
                g.name, objects[g.source.0], objects[g.target.0]
            ));
        }
    }
    if !p.relations().is_empty() {
        out.push_str("\n[relations]\n");
        for (l, r) in p.relations() {
            out.push_str(&format!("{} = {}\n", p.display_word(l), p.display_word(r)));
        }
    }
    if let Some(g) = &s.garside {
        out.push_str("\n[garside]\n");
        match g {
            GarsideSpec::Auto => out.push_str("auto\n"),
            GarsideSpec::Family(ws) => {
                let words: Vec<String> = ws.iter().map(|w| p.display_word(w)).collect();
                out.push_str(&format!("family: {}\n", words.join(", ")));
            }
            GarsideSpec::Delta(ds) => {
                for (i, d) in ds.iter().enumerate() {
                    if plain {
                        out.push_str(&format!("delta: {}\n", p.display_word(d)));
                    } else {
                        out.push_str(&format!("delta {}: {}\n", objects[i], p.display_word(d)));
                    }
                }
            }
        }
    }
    out
}

/// Identities go last, in object order, whether or not `[elements]` lists
/// them; identity products are implicit.
pub fn parse_germ(text: &str) -> Result<Germ, FormatError> {
    let secs = sections(text, &["objects", "elements", "identity", "product"])?;
    let objects = parse_objects(take(&secs, "objects"))?;
    let mut ids: Vec<Option<String>> = vec![None; objects.len()];
    for l in take(&secs, "identity") {
        let (name, obj) = match l.text.split_once(':') {
            Some((n, o)) => (n.trim(), object_id(&objects, o.trim(), l.number)?),
            None if objects.len() == 1 => (l.text, ObjectId(0)),
            None => {
                return err(
                    l.number,
                    format!("`{}` needs its object: `name : obj`", l.text),
                )
            }
        };
        if ids[obj.0].is_some() {
            return err(
                l.number,
                format!("second identity for object `{}`", objects[obj.0]),
            );
        }
        ids[obj.0] = Some(name.to_string());
    }
    let mut elements: Vec<(String, ObjectId, ObjectId)> = Vec::new();
    for l in take(&secs, "elements") {
        for e in parse_arrow(&objects, l)? {
            if ids.iter().flatten().any(|i| *i == e.0) {
                continue;
            }
            if elements.iter().any(|x| x.0 == e.0) {
                return err(l.number, format!("duplicate element `{}`", e.0));
            }
            elements.push(e);
        }
    }
    let mut identities = Vec::new();
    for (o, id) in ids.into_iter().enumerate() {
        let Some(id) = id else {
            return err(0, format!("no identity for object `{}`", objects[o]));
        };
        identities.push(elements.len());
        elements.push((id, ObjectId(o), ObjectId(o)));
    }
    let find = |name: &str, line: usize| {
        elements
            .iter()
            .position(|e| e.0 == name)
            .ok_or(FormatError {
                line,
                message: format!("unknown element `{name}`"),
            })
    };
    let mut products = Vec::new();
    for l in take(&secs, "product") {
        let parsed = l.text.split_once('=').and_then(|(lhs, t)| {
            lhs.split_once('*')
                .map(|(r, s)| (r.trim(), s.trim(), t.trim()))
        });
        let Some((r, s, t)) = parsed else {
            return err(l.number, "expected `r * s = t`");
        };
        products.push((find(r, l.number)?, find(s, l.number)?, find(t, l.number)?));
    }
    Germ::new(objects, elements, identities, &products).map_err(|e| FormatError {
        line: 0,
        message: e.to_string(),
    })
}

pub fn emit_germ(g: &Germ) -> String {
    let objects = g.objects();
    let plain = single_object(objects);
    let mut out = String::new();
    if !plain {
        out.push_str("[objects]\n");
        for o in objects {
            out.push_str(o);
            out.push('\n');
        }
        out.push('\n');
    }
    out.push_str("[elements]\n");
    for x in (0..g.len()).filter(|&x| !g.is_identity(x)) {
        let (s, t) = g.ends(x);
        if plain {
            out.push_str(&format!("{}\n", g.name(x)));
        } else {
            out.push_str(&format!(
                "{} : {} -> {}\n",
                g.name(x),
                objects[s.0],
                objects[t.0]
            ));
        }
    }
    out.push_str("\n[identity]\n");
    for (o, &i) in g.identities().iter().enumerate() {
        if plain {
            out.push_str(&format!("{}\n", g.name(i)));
        } else {
            out.push_str(&format!("{} : {}\n", g.name(i), objects[o]));
        }
    }
    let prods = g.nontrivial_products();
    if !prods.is_empty() {
        out.push_str("\n[product]\n");
        for (r, s, t) in prods {
            out.push_str(&format!("{} * {} = {}\n", g.name(r), g.name(s), g.name(t)));
        }
    }
    out
}

/// Germ files are recognised by their `[elements]` section.
pub fn is_germ_file(text: &str) -> bool {
    text.lines()
        .any(|l| l.split('#').next().unwrap().trim() == "[elements]")
}
