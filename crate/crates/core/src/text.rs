//! The `.circ` text format and DOT export.
//!
//! ```text
//! # comment
//! circuit NAME { inputs: a1 a2; outputs: b; gates: p q; order: p < q;
//!                lambda: a1 -> p; a2 -> p; mu: b -> q; }
//! relation NAME { inputs: a1 a2; outputs: b; pairs: a1 - b, a2 - b; }
//! partition NAME of CIRCUIT { block: p q; }
//! morphism NAME : SRC -> DST { p => x; q => x; }
//! ```
//!
//! Identifiers are bare `[A-Za-z0-9_]+` or double-quoted strings with `\"`
//! and `\\` escapes. Order clauses list generators; the order is their
//! reflexive-transitive closure. Gates missing from a partition form
//! singleton blocks. Clauses may appear in any order and default to empty.
//!
//! [`serialise`] emits declarations sorted by name. Within a declaration
//! inputs, outputs and gates keep the order of the value being written, so
//! `parse(serialise(d)) == d`.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::circuit::Circuit;
use crate::congruence::Equivalence;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::order::Poset;
use crate::relation::Relation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionDecl {
    pub circuit: String,
    pub equivalence: Equivalence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDecl {
    pub source: String,
    pub target: String,
    pub morphism: Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Declaration {
    Circuit(Circuit),
    Relation(Relation),
    Partition(PartitionDecl),
    Morphism(MorphismDecl),
}

impl Declaration {
    pub fn kind(&self) -> &'static str {
        match self {
            Declaration::Circuit(_) => "circuit",
            Declaration::Relation(_) => "relation",
            Declaration::Partition(_) => "partition",
            Declaration::Morphism(_) => "morphism",
        }
    }
}

/// Named declarations with unique names and resolved cross-references.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    decls: BTreeMap<String, Declaration>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Declaration)> {
        self.decls.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn get(&self, name: &str) -> Option<&Declaration> {
        self.decls.get(name)
    }

    /// Adds a declaration. Partitions and morphisms must refer to circuits
    /// already in the document, and a morphism's source and target must be
    /// equal to the circuits they name.
    pub fn insert(&mut self, name: impl Into<String>, decl: Declaration) -> Result<()> {
        let name = name.into();
        if self.decls.contains_key(&name) {
            return Err(Error::DuplicateIdentifier(name));
        }
        let semantic = |message: String| Error::Semantic {
            decl: name.clone(),
            message,
        };
        match &decl {
            Declaration::Partition(p) => {
                let c = self.circuit(&p.circuit).map_err(|e| semantic(e.to_string()))?;
                if c.len() != p.equivalence.carrier_len() {
                    return Err(semantic(format!(
                        "partition has {} elements but circuit `{}` has {} gates",
                        p.equivalence.carrier_len(),
                        p.circuit,
                        c.len()
                    )));
                }
            }
            Declaration::Morphism(m) => {
                for (role, cname, c) in [
                    ("source", &m.source, m.morphism.source()),
                    ("target", &m.target, m.morphism.target()),
                ] {
                    let declared = self.circuit(cname).map_err(|e| semantic(e.to_string()))?;
                    if declared != c {
                        return Err(semantic(format!("{role} differs from circuit `{cname}`")));
                    }
                }
            }
            _ => {}
        }
        self.decls.insert(name, decl);
        Ok(())
    }

    fn lookup(&self, name: &str, kind: &str) -> Result<&Declaration> {
        match self.decls.get(name) {
            Some(d) if d.kind() == kind => Ok(d),
            Some(d) => Err(Error::Semantic {
                decl: name.to_owned(),
                message: format!("expected a {kind}, found a {}", d.kind()),
            }),
            None => Err(Error::UnknownElement(name.to_owned())),
        }
    }

    pub fn circuit(&self, name: &str) -> Result<&Circuit> {
        match self.lookup(name, "circuit")? {
            Declaration::Circuit(c) => Ok(c),
            _ => unreachable!(),
        }
    }

    pub fn relation(&self, name: &str) -> Result<&Relation> {
        match self.lookup(name, "relation")? {
            Declaration::Relation(r) => Ok(r),
            _ => unreachable!(),
        }
    }

    pub fn partition(&self, name: &str) -> Result<&PartitionDecl> {
        match self.lookup(name, "partition")? {
            Declaration::Partition(p) => Ok(p),
            _ => unreachable!(),
        }
    }

    pub fn morphism(&self, name: &str) -> Result<&MorphismDecl> {
        match self.lookup(name, "morphism")? {
            Declaration::Morphism(m) => Ok(m),
            _ => unreachable!(),
        }
    }
}

// ---------------------------------------------------------------------------
// lexing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    Colon,
    Semi,
    Comma,
    Lt,
    Arrow,
    FatArrow,
    Dash,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Dash => "`-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        message: message.into(),
    }
}

fn is_bare(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l, col: k });
        match c {
            _ if c.is_whitespace() => {
                bump!();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            '{' | '}' | ':' | ';' | ',' | '<' => {
                bump!();
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    _ => Tok::Lt,
                };
                push(&mut out, tok);
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    push(&mut out, Tok::Arrow);
                } else {
                    push(&mut out, Tok::Dash);
                }
            }
            '=' => {
                bump!();
                if chars.peek() != Some(&'>') {
                    return Err(syntax(l, k, "expected `=>`"));
                }
                bump!();
                push(&mut out, Tok::FatArrow);
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        None | Some('\n') => return Err(syntax(l, k, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => match bump!() {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            _ => return Err(syntax(line, col - 1, "invalid escape in string")),
                        },
                        Some(c) => s.push(c),
                    }
                }
                if s.is_empty() {
                    return Err(syntax(l, k, "empty identifier"));
                }
                push(&mut out, Tok::Ident(s));
            }
            _ if is_bare(c) => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if !is_bare(c) {
                        break;
                    }
                    s.push(c);
                    bump!();
                }
                push(&mut out, Tok::Ident(s));
            }
            _ => return Err(syntax(l, k, format!("unexpected character `{c}`"))),
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// parsing

type Pairs = Vec<(String, String)>;

enum Raw {
    Circuit {
        inputs: Vec<String>,
        outputs: Vec<String>,
        gates: Vec<String>,
        order: Pairs,
        lambda: Pairs,
        mu: Pairs,
    },
    Relation {
        inputs: Vec<String>,
        outputs: Vec<String>,
        pairs: Pairs,
    },
    Partition {
        circuit: String,
        blocks: Vec<Vec<String>>,
    },
    Morphism {
        source: String,
        target: String,
        map: Pairs,
    },
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> Error {
        let t = self.peek();
        syntax(t.line, t.col, format!("expected {expected}, found {}", t.tok.describe()))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek().tok == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(&tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => Err(self.error_here("an identifier")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().tok == *tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn at_clause_end(&self) -> bool {
        matches!(self.peek().tok, Tok::RBrace | Tok::Eof)
            || (matches!(self.peek().tok, Tok::Ident(_)) && *self.peek2() == Tok::Colon)
    }

    fn document(&mut self) -> Result<Vec<(String, Token, Raw)>> {
        let mut decls = Vec::new();
        while self.peek().tok != Tok::Eof {
            let start = self.peek().clone();
            let kw = self.ident()?;
            let name = self.ident()?;
            let raw = match kw.as_str() {
                "circuit" => self.circuit_body()?,
                "relation" => self.relation_body()?,
                "partition" => {
                    let of = self.peek().clone();
                    if self.ident()? != "of" {
                        return Err(syntax(of.line, of.col, "expected `of`"));
                    }
                    let circuit = self.ident()?;
                    self.partition_body(circuit)?
                }
                "morphism" => {
                    self.expect(Tok::Colon)?;
                    let source = self.ident()?;
                    self.expect(Tok::Arrow)?;
                    let target = self.ident()?;
                    self.morphism_body(source, target)?
                }
                other => {
                    return Err(syntax(
                        start.line,
                        start.col,
                        format!("unknown declaration kind `{other}`"),
                    ))
                }
            };
            decls.push((name, start, raw));
        }
        Ok(decls)
    }

    /// Runs `body` once per `key:` clause until the closing brace.
    fn clauses(
        &mut self,
        allowed: &[&str],
        mut body: impl FnMut(&mut Self, &str) -> Result<()>,
    ) -> Result<()> {
        self.expect(Tok::LBrace)?;
        let mut seen = HashSet::new();
        while !self.eat(&Tok::RBrace) {
            let t = self.peek().clone();
            let key = self.ident()?;
            if !allowed.contains(&key.as_str()) {
                return Err(syntax(
                    t.line,
                    t.col,
                    format!("unknown clause `{key}`, expected one of: {}", allowed.join(", ")),
                ));
            }
            if !seen.insert(key.clone()) && key != "block" {
                return Err(syntax(t.line, t.col, format!("clause `{key}` given twice")));
            }
            self.expect(Tok::Colon)?;
            body(self, &key)?;
        }
        Ok(())
    }

    /// `id*;` with optional commas between ids
    fn id_list(&mut self) -> Result<Vec<String>> {
        let mut ids = Vec::new();
        while !self.eat(&Tok::Semi) {
            ids.push(self.ident()?);
            self.eat(&Tok::Comma);
        }
        Ok(ids)
    }

    /// `(id SEP id ;)*` up to the next clause or closing brace
    fn arrow_items(&mut self, sep: Tok) -> Result<Pairs> {
        let mut items = Vec::new();
        while !self.at_clause_end() {
            if self.eat(&Tok::Semi) {
                continue;
            }
            let x = self.ident()?;
            self.expect(sep.clone())?;
            let y = self.ident()?;
            self.expect(Tok::Semi)?;
            items.push((x, y));
        }
        Ok(items)
    }

    fn circuit_body(&mut self) -> Result<Raw> {
        let (mut inputs, mut outputs, mut gates) = (vec![], vec![], vec![]);
        let (mut order, mut lambda, mut mu) = (vec![], vec![], vec![]);
        self.clauses(
            &["inputs", "outputs", "gates", "order", "lambda", "mu"],
            |p, key| {
                match key {
                    "inputs" => inputs = p.id_list()?,
                    "outputs" => outputs = p.id_list()?,
                    "gates" => gates = p.id_list()?,
                    "order" => order = p.arrow_items(Tok::Lt)?,
                    "lambda" => lambda = p.arrow_items(Tok::Arrow)?,
                    _ => mu = p.arrow_items(Tok::Arrow)?,
                }
                Ok(())
            },
        )?;
        Ok(Raw::Circuit {
            inputs,
            outputs,
            gates,
            order,
            lambda,
            mu,
        })
    }

    fn relation_body(&mut self) -> Result<Raw> {
        let (mut inputs, mut outputs, mut pairs) = (vec![], vec![], vec![]);
        self.clauses(&["inputs", "outputs", "pairs"], |p, key| {
            match key {
                "inputs" => inputs = p.id_list()?,
                "outputs" => outputs = p.id_list()?,
                _ => {
                    while !p.eat(&Tok::Semi) {
                        let a = p.ident()?;
                        p.expect(Tok::Dash)?;
                        let b = p.ident()?;
                        pairs.push((a, b));
                        p.eat(&Tok::Comma);
                    }
                }
            }
            Ok(())
        })?;
        Ok(Raw::Relation {
            inputs,
            outputs,
            pairs,
        })
    }

    fn partition_body(&mut self, circuit: String) -> Result<Raw> {
        let mut blocks = Vec::new();
        self.clauses(&["block"], |p, _| {
            let t = p.peek().clone();
            let ids = p.id_list()?;
            if ids.is_empty() {
                return Err(syntax(t.line, t.col, "empty block"));
            }
            blocks.push(ids);
            Ok(())
        })?;
        Ok(Raw::Partition { circuit, blocks })
    }

    fn morphism_body(&mut self, source: String, target: String) -> Result<Raw> {
        self.expect(Tok::LBrace)?;
        let mut map = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if self.eat(&Tok::Semi) {
                continue;
            }
            let p = self.ident()?;
            self.expect(Tok::FatArrow)?;
            let q = self.ident()?;
            self.expect(Tok::Semi)?;
            map.push((p, q));
        }
        Ok(Raw::Morphism { source, target, map })
    }
}

fn build_circuit(
    decl: &str,
    inputs: Vec<String>,
    outputs: Vec<String>,
    gates: Vec<String>,
    order: Pairs,
    lambda: Pairs,
    mu: Pairs,
) -> Result<Circuit> {
    let poset = Poset::from_generators(&gates, &order)?;
    for (what, names, assignment) in [("input", &inputs, &lambda), ("output", &outputs, &mu)] {
        let mut seen = HashSet::new();
        for (x, _) in assignment {
            if !names.contains(x) {
                return Err(Error::UnknownElement(x.clone()));
            }
            if !seen.insert(x) {
                return Err(Error::DuplicateIdentifier(x.clone()));
            }
        }
        if let Some(missing) = names.iter().find(|n| !seen.contains(n)) {
            let clause = if what == "input" { "lambda" } else { "mu" };
            return Err(Error::Semantic {
                decl: decl.to_owned(),
                message: format!("{what} `{missing}` has no {clause} entry"),
            });
        }
    }
    Circuit::from_names(poset, &inputs, &outputs, &lambda, &mu)
}

fn build_morphism(doc: &Document, source: &str, target: &str, map: &Pairs) -> Result<Morphism> {
    let (s, t) = (doc.circuit(source)?, doc.circuit(target)?);
    let mut seen = HashSet::new();
    for (p, _) in map {
        s.gate_index(p)?;
        if !seen.insert(p) {
            return Err(Error::DuplicateIdentifier(p.clone()));
        }
    }
    if let Some(missing) = s.gates().elements().iter().find(|g| !seen.contains(g)) {
        return Err(Error::UnknownElement(format!("image of gate `{missing}`")));
    }
    Morphism::from_names(s.clone(), t.clone(), map)
}

/// Parses a `.circ` document.
pub fn parse(text: &str) -> Result<Document> {
    let mut parser = Parser { toks: lex(text)?, pos: 0 };
    let raw = parser.document()?;

    let mut names = HashSet::new();
    for (name, _, _) in &raw {
        if !names.insert(name.clone()) {
            return Err(Error::Semantic {
                decl: name.clone(),
                message: "declared more than once".into(),
            });
        }
    }

    let mut doc = Document::new();
    let (first, second): (Vec<_>, Vec<_>) = raw
        .into_iter()
        .partition(|(_, _, r)| matches!(r, Raw::Circuit { .. } | Raw::Relation { .. }));
    for (name, _, r) in first.into_iter().chain(second) {
        let wrap = |e: Error| match e {
            Error::Semantic { ref decl, .. } if *decl == name => e,
            e => Error::Semantic {
                decl: name.clone(),
                message: e.to_string(),
            },
        };
        let decl = match r {
            Raw::Circuit {
                inputs,
                outputs,
                gates,
                order,
                lambda,
                mu,
            } => Declaration::Circuit(build_circuit(&name, inputs, outputs, gates, order, lambda, mu).map_err(wrap)?),
            Raw::Relation {
                inputs,
                outputs,
                pairs,
            } => Declaration::Relation(Relation::new(&inputs, &outputs, &pairs).map_err(wrap)?),
            Raw::Partition { circuit, blocks } => {
                let c = doc.circuit(&circuit).map_err(wrap)?;
                let mut all = blocks;
                let listed: HashSet<&String> = all.iter().flatten().collect();
                let singletons: Vec<Vec<String>> = c
                    .gates()
                    .elements()
                    .iter()
                    .filter(|g| !listed.contains(g))
                    .map(|g| vec![g.clone()])
                    .collect();
                all.extend(singletons);
                let equivalence = Equivalence::from_named_blocks(c.gates(), &all).map_err(wrap)?;
                Declaration::Partition(PartitionDecl { circuit, equivalence })
            }
            Raw::Morphism { source, target, map } => {
                let morphism = build_morphism(&doc, &source, &target, &map).map_err(wrap)?;
                Declaration::Morphism(MorphismDecl {
                    source,
                    target,
                    morphism,
                })
            }
        };
        doc.insert(name.clone(), decl).map_err(wrap)?;
    }
    Ok(doc)
}

// ---------------------------------------------------------------------------
// output

/// An identifier as written in `.circ` text, quoted when it is not bare.
pub fn quote_ident(s: &str) -> String {
    if !s.is_empty() && s.chars().all(is_bare) {
        s.to_owned()
    } else {
        quoted(s)
    }
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn id_line(ids: impl IntoIterator<Item = impl AsRef<str>>) -> String {
    let mut s = String::new();
    for id in ids {
        s.push(' ');
        s.push_str(&quote_ident(id.as_ref()));
    }
    s
}

fn items<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>, sep: &str) -> String {
    let mut s = String::new();
    for (x, y) in pairs {
        let _ = write!(s, " {} {sep} {};", quote_ident(x), quote_ident(y));
    }
    if s.is_empty() {
        s.push_str(" ;");
    }
    s
}

/// A single `circuit` declaration. Order generators are the covers.
pub fn circuit_decl(name: &str, c: &Circuit) -> String {
    let lambda = (0..c.inputs().len()).map(|a| (c.inputs()[a].as_str(), c.gate_name(c.lambda(a))));
    let mu = (0..c.outputs().len()).map(|b| (c.outputs()[b].as_str(), c.gate_name(c.mu(b))));
    format!(
        "circuit {} {{\n  inputs:{};\n  outputs:{};\n  gates:{};\n  order:{}\n  lambda:{}\n  mu:{}\n}}\n",
        quote_ident(name),
        id_line(c.inputs()),
        id_line(c.outputs()),
        id_line(c.gates().elements()),
        items(c.gates().cover_names(), "<"),
        items(lambda, "->"),
        items(mu, "->"),
    )
}

pub fn relation_decl(name: &str, r: &Relation) -> String {
    let pairs: Vec<String> = r
        .pair_names()
        .into_iter()
        .map(|(a, b)| format!("{} - {}", quote_ident(a), quote_ident(b)))
        .collect();
    format!(
        "relation {} {{\n  inputs:{};\n  outputs:{};\n  pairs:{};\n}}\n",
        quote_ident(name),
        id_line(r.inputs()),
        id_line(r.outputs()),
        if pairs.is_empty() {
            String::new()
        } else {
            format!(" {}", pairs.join(", "))
        },
    )
}

/// A `partition` declaration; singleton blocks are left implicit.
pub fn partition_decl(name: &str, circuit_name: &str, circuit: &Circuit, theta: &Equivalence) -> String {
    let mut s = format!("partition {} of {} {{\n", quote_ident(name), quote_ident(circuit_name));
    for block in theta.named_blocks(circuit.gates()) {
        if block.len() > 1 {
            let _ = writeln!(s, "  block:{};", id_line(block));
        }
    }
    s.push_str("}\n");
    s
}

pub fn morphism_decl(name: &str, source: &str, target: &str, f: &Morphism) -> String {
    let mut s = format!(
        "morphism {} : {} -> {} {{\n",
        quote_ident(name),
        quote_ident(source),
        quote_ident(target)
    );
    for (p, q) in f.named_pairs() {
        let _ = writeln!(s, "  {} => {};", quote_ident(p), quote_ident(q));
    }
    s.push_str("}\n");
    s
}

/// Canonical text of a document: declarations sorted by name, separated by
/// blank lines. The empty document serialises to the empty string.
pub fn serialise(doc: &Document) -> String {
    let parts: Vec<String> = doc
        .iter()
        .map(|(name, decl)| match decl {
            Declaration::Circuit(c) => circuit_decl(name, c),
            Declaration::Relation(r) => relation_decl(name, r),
            Declaration::Partition(p) => {
                let c = doc.circuit(&p.circuit).expect("resolved on insert");
                partition_decl(name, &p.circuit, c, &p.equivalence)
            }
            Declaration::Morphism(m) => morphism_decl(name, &m.source, &m.target, &m.morphism),
        })
        .collect();
    parts.join("\n")
}

/// DOT rendering of a circuit: the Hasse diagram of the gates drawn upward
/// with inputs below and outputs above. Node ids carry a role prefix
/// (`g:`, `in:`, `out:`) so names shared between roles stay distinct.
pub fn to_dot(name: &str, c: &Circuit) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quoted(name));
    s.push_str("  rankdir=BT;\n");
    s.push_str("  node [shape=box];\n");
    for g in c.gates().elements() {
        let _ = writeln!(s, "  {} [label={}];", quoted(&format!("g:{g}")), quoted(g));
    }
    if !c.inputs().is_empty() {
        s.push_str("  { rank=source;\n");
        for a in c.inputs() {
            let _ = writeln!(s, "    {} [label={}, shape=plain];", quoted(&format!("in:{a}")), quoted(a));
        }
        s.push_str("  }\n");
    }
    if !c.outputs().is_empty() {
        s.push_str("  { rank=sink;\n");
        for b in c.outputs() {
            let _ = writeln!(s, "    {} [label={}, shape=plain];", quoted(&format!("out:{b}")), quoted(b));
        }
        s.push_str("  }\n");
    }
    for (p, q) in c.gates().cover_names() {
        let _ = writeln!(s, "  {} -> {};", quoted(&format!("g:{p}")), quoted(&format!("g:{q}")));
    }
    for (a, name) in c.inputs().iter().enumerate() {
        let gate = c.gate_name(c.lambda(a));
        let _ = writeln!(s, "  {} -> {};", quoted(&format!("in:{name}")), quoted(&format!("g:{gate}")));
    }
    for (b, name) in c.outputs().iter().enumerate() {
        let gate = c.gate_name(c.mu(b));
        let _ = writeln!(s, "  {} -> {};", quoted(&format!("g:{gate}")), quoted(&format!("out:{name}")));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX23: &str = "
        # four gates, three inputs, two outputs
        circuit C {
          inputs: a1 a2 a3;
          outputs: b1 b2;
          gates: p q r s;
          order: q < p; q < r; r < s;
          lambda: a1 -> p; a2 -> r; a3 -> s;
          mu: b1 -> p; b2 -> s;
        }
    ";

    fn ex23() -> Circuit {
        Circuit::from_names(
            Poset::from_generators(&["p", "q", "r", "s"], &[("q", "p"), ("q", "r"), ("r", "s")]).unwrap(),
            &["a1", "a2", "a3"],
            &["b1", "b2"],
            &[("a1", "p"), ("a2", "r"), ("a3", "s")],
            &[("b1", "p"), ("b2", "s")],
        )
        .unwrap()
    }

    #[test]
    fn parses_example_circuit() {
        let doc = parse(EX23).unwrap();
        assert_eq!(doc.circuit("C").unwrap(), &ex23());
    }

    #[test]
    fn round_trip_is_identity() {
        let doc = parse(EX23).unwrap();
        let text = serialise(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        assert_eq!(serialise(&parse(&text).unwrap()), text);
    }

    #[test]
    fn canonical_circuit_text() {
        let text = serialise(&parse(EX23).unwrap());
        assert_eq!(
            text,
            "circuit C {\n  inputs: a1 a2 a3;\n  outputs: b1 b2;\n  gates: p q r s;\n  order: q < p; q < r; r < s;\n  lambda: a1 -> p; a2 -> r; a3 -> s;\n  mu: b1 -> p; b2 -> s;\n}\n"
        );
    }

    #[test]
    fn single_gate_circuit() {
        let doc = parse("circuit X { inputs: ; outputs: ; gates: g; order: ; lambda: ; mu: ; }").unwrap();
        let c = doc.circuit("X").unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.inputs().is_empty() && c.outputs().is_empty());
    }

    #[test]
    fn cycle_is_a_semantic_error() {
        let err = parse("circuit X { gates: p q; order: p < q; q < p; }").unwrap_err();
        assert_eq!(
            err,
            Error::Semantic {
                decl: "X".into(),
                message: "order contains a cycle: p < q < p".into()
            }
        );
    }

    #[test]
    fn syntax_errors_are_positioned() {
        let err = parse("circuit X {\n  gates: p q\n  order: p q;\n}").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, col: 8, .. }), "{err}");
        let err = parse("circuit X { gates: p; } @").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, col: 25, .. }), "{err}");
        let err = parse("widget X { }").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, col: 1, .. }), "{err}");
    }

    #[test]
    fn missing_lambda_entry_names_declaration() {
        let err = parse("circuit Y { inputs: a; gates: g; }").unwrap_err();
        match err {
            Error::Semantic { decl, message } => {
                assert_eq!(decl, "Y");
                assert!(message.contains("lambda"), "{message}");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn unknown_gate_in_lambda() {
        let err = parse("circuit Y { inputs: a; gates: g; lambda: a -> h; }").unwrap_err();
        assert!(matches!(err, Error::Semantic { ref decl, .. } if decl == "Y"), "{err}");
    }

    #[test]
    fn quoted_identifiers_round_trip() {
        let c = ex23()
            .with_gate_names(vec!["p+q".into(), "c{1,2}".into(), "in:v".into(), "say \"hi\"".into()])
            .unwrap();
        let mut doc = Document::new();
        doc.insert("odd name", Declaration::Circuit(c)).unwrap();
        let text = serialise(&doc);
        assert!(text.contains("\"p+q\""));
        assert!(text.contains("\"say \\\"hi\\\"\""));
        assert_eq!(parse(&text).unwrap(), doc);
    }

    #[test]
    fn relation_partition_morphism() {
        let text = "
            morphism f : P -> Q { x => u; y => u; }
            relation G { inputs: a1 a2; outputs: b; pairs: a1 - b, a2 - b; }
            partition T of P { block: x y; }
            circuit P { inputs: a; outputs: b; gates: x y; order: x < y; lambda: a -> x; mu: b -> y; }
            circuit Q { inputs: a; outputs: b; gates: u; lambda: a -> u; mu: b -> u; }
        ";
        let doc = parse(text).unwrap();
        assert_eq!(doc.relation("G").unwrap().pairs(), vec![(0, 0), (1, 0)]);
        assert_eq!(doc.partition("T").unwrap().equivalence.num_blocks(), 1);
        assert_eq!(doc.morphism("f").unwrap().morphism.map(), &[0, 0]);
        let canon = serialise(&doc);
        let names: Vec<&str> = canon
            .lines()
            .filter(|l| !l.starts_with(' ') && !l.starts_with('}') && !l.is_empty())
            .collect();
        assert_eq!(
            names,
            vec!["relation G {", "circuit P {", "circuit Q {", "partition T of P {", "morphism f : P -> Q {"]
        );
        assert_eq!(parse(&canon).unwrap(), doc);
    }

    #[test]
    fn cross_reference_errors() {
        let err = parse("partition T of Nope { block: x; }").unwrap_err();
        assert!(matches!(err, Error::Semantic { ref decl, .. } if decl == "T"), "{err}");
        let err = parse("relation P { } morphism f : P -> P { }").unwrap_err();
        assert!(matches!(err, Error::Semantic { ref decl, .. } if decl == "f"), "{err}");
        let err = parse("relation P { } relation P { }").unwrap_err();
        assert!(matches!(err, Error::Semantic { ref decl, .. } if decl == "P"), "{err}");
    }

    #[test]
    fn partial_morphism_is_rejected() {
        let text = "circuit P { gates: x y; } morphism f : P -> P { x => y; }";
        let err = parse(text).unwrap_err();
        assert!(matches!(err, Error::Semantic { ref decl, .. } if decl == "f"), "{err}");
    }

    #[test]
    fn empty_document() {
        let doc = parse("  # nothing\n").unwrap();
        assert!(doc.is_empty());
        assert_eq!(serialise(&doc), "");
    }

    #[test]
    fn dot_of_example() {
        let dot = to_dot("C", &ex23());
        assert_eq!(dot.matches("shape=plain").count(), 5);
        assert_eq!(dot.matches("[label=").count(), 9);
        assert_eq!(dot.matches(" -> ").count(), 3 + 5);
        assert!(dot.contains("\"g:q\" -> \"g:p\";"));
        assert!(dot.contains("\"g:s\" -> \"out:b2\";"));
    }

    #[test]
    fn dot_of_single_gate() {
        let c = Circuit::new(Poset::antichain(vec!["g".into()]).unwrap(), vec![], vec![], vec![], vec![]).unwrap();
        assert_eq!(
            to_dot("X", &c),
            "digraph \"X\" {\n  rankdir=BT;\n  node [shape=box];\n  \"g:g\" [label=\"g\"];\n}\n"
        );
    }
}
