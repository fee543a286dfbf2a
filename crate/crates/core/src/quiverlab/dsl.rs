//! Line-oriented quiver DSL.
//!
//! ```text
//! coalgebra ex2
//! field rational
//! param N = 3
//! mode declared
//! vertex a
//! vertex b[n], n=1..N
//! arrow x[n,i]: a -> b[n], n=1..N, i=1..n
//! path p[n] = x[n,1] . y[n], n=1..N
//! ```

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::exactlin::Field;

use super::QuiverError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Colon,
    Eq,
    DotDot,
    Dot,
    Arrow,
    Plus,
    Minus,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Eq => "`=`".into(),
        Tok::DotDot => "`..`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
    }
}

fn lex(line: usize, text: &str) -> Result<Vec<(Tok, usize)>, QuiverError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let v = digits.parse().map_err(|_| QuiverError::Syntax { line, col, message: format!("integer `{digits}` is too large") })?;
            out.push((Tok::Int(v), col));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, width) = match (c, next) {
            ('.', Some('.')) => (Tok::DotDot, 2),
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('.', _) => (Tok::Dot, 1),
            ('-', _) => (Tok::Minus, 1),
            ('+', _) => (Tok::Plus, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (',', _) => (Tok::Comma, 1),
            (':', _) => (Tok::Colon, 1),
            ('=', _) => (Tok::Eq, 1),
            _ => return Err(QuiverError::Syntax { line, col, message: format!("unexpected character `{c}`") }),
        };
        out.push((tok, col));
        i += width;
    }
    Ok(out)
}

/// Integer expression: a signed sum of literals and names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    terms: Vec<(i64, Term)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Term {
    Int(i64),
    Name { name: String, col: usize },
}

impl Expr {
    fn eval(&self, line: usize, env: &BTreeMap<String, i64>) -> Result<i64, QuiverError> {
        let mut acc: i64 = 0;
        for (sign, term) in &self.terms {
            let v = match term {
                Term::Int(v) => *v,
                Term::Name { name, col } => *env.get(name).ok_or_else(|| QuiverError::Syntax {
                    line,
                    col: *col,
                    message: format!("unknown name `{name}`"),
                })?,
            };
            acc = acc
                .checked_add(sign * v)
                .ok_or_else(|| QuiverError::Syntax { line, col: 1, message: "integer overflow".into() })?;
        }
        Ok(acc)
    }
}

/// `name` or `name[e1, e2, ...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ref {
    pub name: String,
    indices: Vec<Expr>,
    col: usize,
}

impl Ref {
    fn resolve(&self, line: usize, env: &BTreeMap<String, i64>) -> Result<(String, Vec<i64>), QuiverError> {
        let values = self.indices.iter().map(|e| e.eval(line, env)).collect::<Result<Vec<_>, _>>()?;
        Ok((label_for(&self.name, &values), values))
    }
}

/// `b` + `[3]` ↦ `b3`, `x` + `[3, 1]` ↦ `x3_1`.
pub fn label_for(name: &str, indices: &[i64]) -> String {
    let rendered: Vec<String> = indices.iter().map(ToString::to_string).collect();
    format!("{name}{}", rendered.join("_"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Range {
    pub var: String,
    lo: Expr,
    hi: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDecl {
    pub pattern: Ref,
    pub ranges: Vec<Range>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub pattern: Ref,
    pub source: Ref,
    pub target: Ref,
    pub ranges: Vec<Range>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecl {
    pub pattern: Ref,
    pub arrows: Vec<Ref>,
    pub ranges: Vec<Range>,
    pub line: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathMode {
    /// Vertices, arrows and the declared paths.
    #[default]
    Declared,
    /// Every walk in the quiver.
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverSpec {
    pub name: Option<String>,
    pub field: Field,
    /// Declaration order; the first one is the family bound.
    pub params: Vec<(String, i64)>,
    pub mode: PathMode,
    pub vertices: Vec<VertexDecl>,
    pub arrows: Vec<ArrowDecl>,
    pub paths: Vec<PathDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    pub name: String,
    pub indices: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub name: String,
    pub indices: Vec<i64>,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPath {
    pub label: String,
    pub arrows: Vec<usize>,
}

/// A spec with every family range expanded at one bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub field: Field,
    pub mode: PathMode,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    pub paths: Vec<NamedPath>,
    vertex_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.vertex_index.get(label).copied()
    }

    pub fn arrows_between(&self, u: usize, w: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == u && a.target == w).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.target == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == v).count()
    }
}

struct LineParser<'a> {
    line: usize,
    toks: &'a [(Tok, usize)],
    pos: usize,
    end_col: usize,
}

impl LineParser<'_> {
    fn error(&self, message: impl Into<String>) -> QuiverError {
        let col = self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col);
        QuiverError::Syntax { line: self.line, col, message: message.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn expect(&mut self, want: Tok) -> Result<(), QuiverError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected {}, found {}", describe(&want), describe(t)))),
            None => Err(self.error(format!("expected {}, found end of line", describe(&want)))),
        }
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, QuiverError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => Err(self.error(format!("expected a name, found {}", describe(t)))),
            None => Err(self.error("expected a name, found end of line")),
        }
    }

    fn int(&mut self) -> Result<i64, QuiverError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            Some(t) => Err(self.error(format!("expected an integer, found {}", describe(t)))),
            None => Err(self.error("expected an integer, found end of line")),
        }
    }

    fn finish(&self) -> Result<(), QuiverError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {}", describe(t)))),
        }
    }

    fn term(&mut self) -> Result<Term, QuiverError> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Int(_)) => Ok(Term::Int(self.int()?)),
            Some(Tok::Ident(_)) => Ok(Term::Name { name: self.ident()?, col }),
            Some(t) => Err(self.error(format!("expected an integer or a name, found {}", describe(t)))),
            None => Err(self.error("expected an integer or a name, found end of line")),
        }
    }

    fn expr(&mut self) -> Result<Expr, QuiverError> {
        let mut terms = vec![(1, self.term()?)];
        loop {
            let sign = if self.eat(&Tok::Plus) {
                1
            } else if self.eat(&Tok::Minus) {
                -1
            } else {
                break;
            };
            terms.push((sign, self.term()?));
        }
        Ok(Expr { terms })
    }

    fn reference(&mut self) -> Result<Ref, QuiverError> {
        let col = self.col();
        let name = self.ident()?;
        let mut indices = Vec::new();
        if self.eat(&Tok::LBracket) {
            indices.push(self.expr()?);
            while self.eat(&Tok::Comma) {
                indices.push(self.expr()?);
            }
            self.expect(Tok::RBracket)?;
        }
        Ok(Ref { name, indices, col })
    }

    fn ranges(&mut self) -> Result<Vec<Range>, QuiverError> {
        let mut out = Vec::new();
        while self.eat(&Tok::Comma) {
            let var = self.ident()?;
            self.expect(Tok::Eq)?;
            let lo = self.expr()?;
            self.expect(Tok::DotDot)?;
            let hi = self.expr()?;
            out.push(Range { var, lo, hi });
        }
        Ok(out)
    }
}

/// Parses `text`, applies parameter `overrides` and validates the result at
/// the resulting parameter values.
pub fn parse_spec(text: &str, overrides: &BTreeMap<String, i64>) -> Result<QuiverSpec, QuiverError> {
    let mut spec = QuiverSpec {
        name: None,
        field: Field::Rational,
        params: Vec::new(),
        mode: PathMode::Declared,
        vertices: Vec::new(),
        arrows: Vec::new(),
        paths: Vec::new(),
    };
    let mut last_line = 1;
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        last_line = line;
        let toks = lex(line, raw)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = LineParser { line, toks: &toks, pos: 0, end_col: raw.chars().count() + 1 };
        let keyword = p.ident()?;
        match keyword.as_str() {
            "coalgebra" => spec.name = Some(p.ident()?),
            "field" => {
                let kind = p.ident()?;
                spec.field = match kind.as_str() {
                    "rational" => Field::Rational,
                    "gf" => {
                        let p_value = if p.eat(&Tok::LParen) {
                            let v = p.int()?;
                            p.expect(Tok::RParen)?;
                            v
                        } else {
                            p.expect(Tok::Colon)?;
                            p.int()?
                        };
                        Field::prime(p_value as u64).map_err(|e| QuiverError::Syntax { line, col: 1, message: e.to_string() })?
                    }
                    other => return Err(QuiverError::Syntax { line, col: toks[1].1, message: format!("unknown field `{other}`") }),
                };
            }
            "param" => {
                let col = p.col();
                let name = p.ident()?;
                p.expect(Tok::Eq)?;
                let value = p.int()?;
                if spec.params.iter().any(|(n, _)| *n == name) {
                    return Err(QuiverError::Syntax { line, col, message: format!("parameter `{name}` declared twice") });
                }
                spec.params.push((name, value));
            }
            "mode" => {
                let col = p.col();
                spec.mode = match p.ident()?.as_str() {
                    "declared" => PathMode::Declared,
                    "all" => PathMode::All,
                    other => return Err(QuiverError::Syntax { line, col, message: format!("unknown mode `{other}` (expected `declared` or `all`)") }),
                };
            }
            "vertex" => {
                let pattern = p.reference()?;
                let ranges = p.ranges()?;
                spec.vertices.push(VertexDecl { pattern, ranges, line });
            }
            "arrow" => {
                let pattern = p.reference()?;
                p.expect(Tok::Colon)?;
                let source = p.reference()?;
                p.expect(Tok::Arrow)?;
                let target = p.reference()?;
                let ranges = p.ranges()?;
                spec.arrows.push(ArrowDecl { pattern, source, target, ranges, line });
            }
            "path" => {
                let pattern = p.reference()?;
                p.expect(Tok::Eq)?;
                let mut arrows = vec![p.reference()?];
                while p.eat(&Tok::Dot) {
                    arrows.push(p.reference()?);
                }
                if arrows.len() < 2 {
                    return Err(p.error("a declared path needs at least two arrows"));
                }
                let ranges = p.ranges()?;
                spec.paths.push(PathDecl { pattern, arrows, ranges, line });
            }
            other => {
                return Err(QuiverError::Syntax { line, col: toks[0].1, message: format!("unknown statement `{other}`") });
            }
        }
        p.finish()?;
    }
    if spec.vertices.is_empty() {
        return Err(QuiverError::Syntax { line: last_line, col: 1, message: "spec declares no vertices".into() });
    }
    for (name, value) in overrides {
        let slot = spec
            .params
            .iter_mut()
            .find(|(n, _)| n == name)
            .ok_or_else(|| QuiverError::UnknownParam(name.clone()))?;
        slot.1 = *value;
    }
    spec.instantiate(None)?;
    Ok(spec)
}

type BindingVisitor<'a> = dyn FnMut(&BTreeMap<String, i64>) -> Result<(), QuiverError> + 'a;

fn for_each_binding(
    line: usize,
    ranges: &[Range],
    env: &mut BTreeMap<String, i64>,
    f: &mut BindingVisitor<'_>,
) -> Result<(), QuiverError> {
    let Some((first, rest)) = ranges.split_first() else {
        return f(env);
    };
    let lo = first.lo.eval(line, env)?;
    let hi = first.hi.eval(line, env)?;
    let saved = env.get(&first.var).copied();
    for v in lo..=hi {
        env.insert(first.var.clone(), v);
        for_each_binding(line, rest, env, f)?;
    }
    match saved {
        Some(v) => env.insert(first.var.clone(), v),
        None => env.remove(&first.var),
    };
    Ok(())
}

impl QuiverSpec {
    pub fn family_param(&self) -> Option<&str> {
        self.params.first().map(|(n, _)| n.as_str())
    }

    /// Default value of the family bound, if the spec has one.
    pub fn default_bound(&self) -> Option<i64> {
        self.params.first().map(|(_, v)| *v)
    }

    /// Expands all families with the family bound set to `bound` (or its
    /// declared default).
    pub fn instantiate(&self, bound: Option<usize>) -> Result<Quiver, QuiverError> {
        let mut env: BTreeMap<String, i64> = self.params.iter().cloned().collect();
        if let (Some(b), Some(name)) = (bound, self.family_param()) {
            env.insert(name.to_string(), b as i64);
        }
        let mut labels: HashSet<String> = HashSet::new();
        let mut claim = |label: &str, line: usize| -> Result<(), QuiverError> {
            if labels.insert(label.to_string()) {
                Ok(())
            } else {
                Err(QuiverError::DuplicateLabel { line, label: label.to_string() })
            }
        };

        let mut vertices = Vec::new();
        for decl in &self.vertices {
            for_each_binding(decl.line, &decl.ranges, &mut env, &mut |env| {
                let (label, indices) = decl.pattern.resolve(decl.line, env)?;
                claim(&label, decl.line)?;
                vertices.push(Vertex { label, name: decl.pattern.name.clone(), indices });
                Ok(())
            })?;
        }
        let vertex_index: HashMap<String, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.label.clone(), i)).collect();

        let mut arrows = Vec::new();
        for decl in &self.arrows {
            for_each_binding(decl.line, &decl.ranges, &mut env, &mut |env| {
                let (label, indices) = decl.pattern.resolve(decl.line, env)?;
                claim(&label, decl.line)?;
                let endpoint = |r: &Ref| -> Result<usize, QuiverError> {
                    let (v, _) = r.resolve(decl.line, env)?;
                    vertex_index.get(&v).copied().ok_or_else(|| QuiverError::Dangling {
                        line: decl.line,
                        arrow: label.clone(),
                        endpoint: v,
                    })
                };
                let source = endpoint(&decl.source)?;
                let target = endpoint(&decl.target)?;
                arrows.push(Arrow { label, name: decl.pattern.name.clone(), indices, source, target });
                Ok(())
            })?;
        }
        let arrow_index: HashMap<String, usize> =
            arrows.iter().enumerate().map(|(i, a)| (a.label.clone(), i)).collect();

        let mut paths: Vec<NamedPath> = Vec::new();
        let mut lines = Vec::new();
        for decl in &self.paths {
            for_each_binding(decl.line, &decl.ranges, &mut env, &mut |env| {
                let (label, _) = decl.pattern.resolve(decl.line, env)?;
                claim(&label, decl.line)?;
                let mut chain = Vec::new();
                for r in &decl.arrows {
                    let (a, _) = r.resolve(decl.line, env)?;
                    let idx = arrow_index.get(&a).copied().ok_or_else(|| QuiverError::Closure {
                        line: decl.line,
                        path: label.clone(),
                        missing: a.clone(),
                    })?;
                    if let Some(&prev) = chain.last() {
                        let prev: usize = prev;
                        if arrows[prev].target != arrows[idx].source {
                            return Err(QuiverError::NotComposable {
                                line: decl.line,
                                path: label.clone(),
                                at: format!("{} . {}", arrows[prev].label, a),
                            });
                        }
                    }
                    chain.push(idx);
                }
                paths.push(NamedPath { label, arrows: chain });
                lines.push(decl.line);
                Ok(())
            })?;
        }

        let mut declared: HashMap<&[usize], &str> = HashMap::new();
        for (p, line) in paths.iter().zip(&lines) {
            if let Some(other) = declared.insert(&p.arrows, &p.label) {
                return Err(QuiverError::DuplicateLabel { line: *line, label: format!("{} (same arrows as {other})", p.label) });
            }
        }
        if self.mode == PathMode::Declared {
            for (p, line) in paths.iter().zip(&lines) {
                let len = p.arrows.len();
                for sub_len in 2..len {
                    for start in 0..=len - sub_len {
                        let sub = &p.arrows[start..start + sub_len];
                        if !declared.contains_key(sub) {
                            let missing: Vec<&str> = sub.iter().map(|&a| arrows[a].label.as_str()).collect();
                            return Err(QuiverError::Closure { line: *line, path: p.label.clone(), missing: missing.join(".") });
                        }
                    }
                }
            }
        }

        Ok(Quiver { field: self.field, mode: self.mode, vertices, arrows, paths, vertex_index })
    }
}
