//! Text grammars: group literals, scalar expressions, element and degree
//! words, and the line-based file formats (Cayley tables, cocycles,
//! triangular matrices, involution actions) plus the JSON spec file.
//!
//! Parsers are total: any byte input yields `Ok` or a structured
//! [`Error::Parse`] naming the line and the expected production.  Writers
//! emit canonical text that parses back bit-exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cocycles::Cocycle;
use crate::cyclotomic::{rational_to_string, CycRational, MAX_ROOT_ORDER};
use crate::degree::{Degree, DegreeCtx, G0Mode};
use crate::groups::{GroupElement, GroupSpec};
use crate::utn::UtMatrix;
use crate::{Error, Result};

const MAX_FACTORS: usize = 16;

// --- group literals ---

/// Parse `Z<n>` products such as `Z2xZ2` or `Z4xZ3`.  `Z1` factors are
/// dropped (they name the trivial group).
pub fn parse_group_literal(s: &str) -> Result<GroupSpec> {
    parse_group_literal_at(s, 1)
}

fn parse_group_literal_at(s: &str, line: usize) -> Result<GroupSpec> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse(line, "a group literal like Z2xZ2"));
    }
    let mut factors = Vec::new();
    for part in s.split(['x', 'X']) {
        let part = part.trim();
        let rest = part
            .strip_prefix('Z')
            .or_else(|| part.strip_prefix('z'))
            .ok_or_else(|| Error::parse(line, "a cyclic factor of the form Z<n>"))?;
        let n: u64 = rest
            .parse()
            .map_err(|_| Error::parse(line, "an integer after Z"))?;
        if n == 0 {
            return Err(Error::parse(line, "a cyclic factor Z<n> with n >= 1"));
        }
        if n > 1 << 16 {
            return Err(Error::parse(line, "a cyclic factor below 2^16"));
        }
        if factors.len() >= MAX_FACTORS {
            return Err(Error::parse(line, "at most 16 cyclic factors"));
        }
        if n > 1 {
            factors.push(n);
        }
    }
    GroupSpec::abelian(factors).map_err(|e| Error::parse(line, e.to_string()))
}

pub fn render_group_literal(group: &GroupSpec) -> Result<String> {
    let factors = group.factors()?;
    if factors.is_empty() {
        return Ok("Z1".to_string());
    }
    Ok(factors
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join("x"))
}

// --- scalar expressions ---

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Zeta(u64, i64),
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn lex_scalar(s: &str, line: usize) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let n = text
                    .parse::<BigInt>()
                    .map_err(|_| Error::parse(line, "an integer"))?;
                out.push(Tok::Num(n));
            }
            'z' | 'Z' => {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(Error::parse(line, "a root order after z"));
                }
                let text: String = bytes[start..i].iter().collect();
                let n: u64 = text
                    .parse()
                    .map_err(|_| Error::parse(line, "a root order after z"))?;
                if n == 0 || n > MAX_ROOT_ORDER {
                    return Err(Error::parse(line, "a root order between 1 and 4096"));
                }
                let mut k: i64 = 1;
                if i < bytes.len() && bytes[i] == '^' {
                    i += 1;
                    let neg = i < bytes.len() && bytes[i] == '-';
                    if neg {
                        i += 1;
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(Error::parse(line, "an exponent after ^"));
                    }
                    let text: String = bytes[start..i].iter().collect();
                    let mag: i64 = text
                        .parse()
                        .map_err(|_| Error::parse(line, "an exponent after ^"))?;
                    k = if neg { -mag } else { mag };
                }
                out.push(Tok::Zeta(n, k));
            }
            _ => return Err(Error::parse(line, format!("a scalar token, found {c:?}"))),
        }
    }
    Ok(out)
}

struct ScalarParser {
    toks: Vec<Tok>,
    pos: usize,
    line: usize,
}

impl ScalarParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<CycRational> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycRational> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CycRational> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<CycRational> {
        match self.bump() {
            Some(Tok::Num(n)) => {
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            Ok(CycRational::from_rational(BigRational::new(n, d)))
                        }
                        Some(Tok::Num(_)) => Err(Error::parse(self.line, "a nonzero denominator")),
                        _ => Err(Error::parse(self.line, "a denominator after /")),
                    }
                } else {
                    Ok(CycRational::from_rational(BigRational::from(n)))
                }
            }
            Some(Tok::Zeta(n, k)) => CycRational::root_of_unity(n, k),
            Some(Tok::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::Close) => Ok(inner),
                    _ => Err(Error::parse(self.line, "a closing parenthesis")),
                }
            }
            _ => Err(Error::parse(
                self.line,
                "a rational literal, z<N>^<k>, or a parenthesized expression",
            )),
        }
    }
}

/// Parse the scalar syntax: rational literals, `z<N>^<k>` roots of unity
/// and `+ - *` composition, e.g. `1/2 + z4^1`.
pub fn parse_scalar(s: &str) -> Result<CycRational> {
    parse_scalar_at(s, 1)
}

fn parse_scalar_at(s: &str, line: usize) -> Result<CycRational> {
    let toks = lex_scalar(s, line)?;
    if toks.is_empty() {
        return Err(Error::parse(line, "a scalar expression"));
    }
    let mut p = ScalarParser { toks, pos: 0, line };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(line, "end of the scalar expression"));
    }
    Ok(v)
}

/// Canonical scalar rendering; parses back to the same value.
pub fn render_scalar(v: &CycRational) -> String {
    let n = v.root_order();
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (k, c) in v.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &BigRational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        let body = if k == 0 {
            rational_to_string(&abs)
        } else if abs.is_one() {
            format!("z{n}^{k}")
        } else {
            format!("{}*z{n}^{k}", rational_to_string(&abs))
        };
        terms.push((neg, body));
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
            out.push_str(body);
        } else {
            out.push_str(if *neg { " - " } else { " + " });
            out.push_str(body);
        }
    }
    out
}

// --- element and degree words ---

/// Binds bare symbols to group generators in order of first use, so that
/// `"a,b,b^-1,a^-1"` reads naturally against any two-generator group and
/// `"g,g^-1"` against a one-generator group.
#[derive(Debug, Default, Clone)]
pub struct SymbolBinder {
    map: BTreeMap<String, usize>,
}

impl SymbolBinder {
    pub fn new() -> Self {
        SymbolBinder::default()
    }

    fn resolve(&mut self, name: &str, group: &GroupSpec, line: usize) -> Result<GroupElement> {
        let factors = group
            .factors()
            .map_err(|_| Error::parse(line, "element symbols require an abelian group literal"))?;
        let next = self.map.len();
        let idx = *self.map.entry(name.to_string()).or_insert(next);
        if idx >= factors.len() {
            return Err(Error::parse(
                line,
                format!(
                    "at most {} distinct generator symbols for this group",
                    factors.len()
                ),
            ));
        }
        let mut exps = vec![0u64; factors.len()];
        exps[idx] = 1;
        Ok(GroupElement::Abelian(exps))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum WordTok {
    Ident(String),
    Int(i64),
    Tuple(Vec<u64>),
    Star,
    Caret,
}

fn lex_word(s: &str, line: usize) -> Result<Vec<WordTok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '*' => {
                out.push(WordTok::Star);
                i += 1;
            }
            '^' => {
                out.push(WordTok::Caret);
                i += 1;
            }
            '(' => {
                i += 1;
                let mut entries = Vec::new();
                let mut cur = String::new();
                loop {
                    if i >= chars.len() {
                        return Err(Error::parse(line, "a closing parenthesis in a tuple"));
                    }
                    match chars[i] {
                        ')' => {
                            i += 1;
                            if !cur.trim().is_empty() {
                                entries.push(
                                    cur.trim()
                                        .parse::<u64>()
                                        .map_err(|_| Error::parse(line, "a tuple of integers"))?,
                                );
                            } else if !entries.is_empty() {
                                return Err(Error::parse(line, "a tuple entry before )"));
                            }
                            break;
                        }
                        ',' => {
                            entries.push(
                                cur.trim()
                                    .parse::<u64>()
                                    .map_err(|_| Error::parse(line, "a tuple of integers"))?,
                            );
                            cur.clear();
                            i += 1;
                        }
                        ch => {
                            cur.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(WordTok::Tuple(entries));
            }
            '0'..='9' | '-' => {
                let start = i;
                if c == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse::<i64>()
                    .map_err(|_| Error::parse(line, "an integer"))?;
                out.push(WordTok::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(WordTok::Ident(text));
            }
            _ => return Err(Error::parse(line, format!("an element token, found {c:?}"))),
        }
    }
    Ok(out)
}

fn pow_element(group: &GroupSpec, base: &GroupElement, e: i64) -> Result<GroupElement> {
    let step = if e >= 0 {
        base.clone()
    } else {
        group.inv(base)?
    };
    let mut acc = group.identity();
    for _ in 0..e.unsigned_abs().min(1 << 20) {
        acc = group.op(&acc, &step)?;
    }
    Ok(acc)
}

/// Parse an element word: products of powers of bare symbols, tuples
/// `(i,j,..)` or (table groups) integer indices; `1` is the identity.
pub fn parse_element(
    s: &str,
    group: &GroupSpec,
    binder: &mut SymbolBinder,
) -> Result<GroupElement> {
    parse_element_at(s, group, binder, 1)
}

fn parse_element_at(
    s: &str,
    group: &GroupSpec,
    binder: &mut SymbolBinder,
    line: usize,
) -> Result<GroupElement> {
    let deg = parse_degree_word_at(
        s,
        &DegreeCtx::new(group.clone(), G0Mode::Formal2)?,
        binder,
        line,
    )?;
    deg.in_support()
        .cloned()
        .ok_or_else(|| Error::parse(line, "an element word without g0"))
}

/// Parse a degree word: an element word possibly multiplied by powers of
/// the reserved symbol `g0`.
pub fn parse_degree_word(s: &str, ctx: &DegreeCtx, binder: &mut SymbolBinder) -> Result<Degree> {
    parse_degree_word_at(s, ctx, binder, 1)
}

fn parse_degree_word_at(
    s: &str,
    ctx: &DegreeCtx,
    binder: &mut SymbolBinder,
    line: usize,
) -> Result<Degree> {
    let toks = lex_word(s, line)?;
    if toks.is_empty() {
        return Err(Error::parse(line, "an element word"));
    }
    let group = &ctx.group;
    let mut acc = ctx.identity_degree();
    let mut pos = 0;
    loop {
        // factor := atom ['^' int]
        let atom = toks
            .get(pos)
            .ok_or_else(|| Error::parse(line, "an element atom"))?
            .clone();
        pos += 1;
        let mut exponent: i64 = 1;
        if matches!(toks.get(pos), Some(WordTok::Caret)) {
            pos += 1;
            match toks.get(pos) {
                Some(WordTok::Int(e)) => {
                    exponent = *e;
                    pos += 1;
                }
                _ => return Err(Error::parse(line, "an integer exponent after ^")),
            }
        }
        let step: Degree = match atom {
            WordTok::Ident(name) if name == "g0" => {
                let g0 = ctx.g0();
                let mut d = ctx.identity_degree();
                let base = if exponent >= 0 { g0 } else { ctx.inv(&g0)? };
                for _ in 0..exponent.unsigned_abs().min(1 << 10) {
                    d = ctx.mul(&d, &base)?;
                }
                d
            }
            WordTok::Ident(name) => {
                let base = binder.resolve(&name, group, line)?;
                ctx.from_element(pow_element(group, &base, exponent)?)?
            }
            WordTok::Int(1) if group.is_abelian_spec() => {
                // `1` is the identity; exponents are irrelevant.
                ctx.identity_degree()
            }
            WordTok::Int(v) => {
                if v < 0 || v as usize >= group.order() {
                    return Err(Error::parse(line, "an element index inside the group"));
                }
                if group.is_abelian_spec() {
                    return Err(Error::parse(
                        line,
                        "symbols, tuples or 1 for abelian groups (bare indices are for Cayley tables)",
                    ));
                }
                let base = group
                    .element(v as usize)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
                ctx.from_element(pow_element(group, &base, exponent)?)?
            }
            WordTok::Tuple(entries) => {
                let elem = GroupElement::Abelian(entries);
                if !group.contains(&elem) {
                    return Err(Error::parse(line, "a tuple matching the group factors"));
                }
                ctx.from_element(pow_element(group, &elem, exponent)?)?
            }
            WordTok::Star | WordTok::Caret => return Err(Error::parse(line, "an element atom")),
        };
        acc = ctx.mul(&acc, &step)?;
        match toks.get(pos) {
            None => return Ok(acc),
            Some(WordTok::Star) => {
                pos += 1;
            }
            Some(_) => return Err(Error::parse(line, "* between element factors")),
        }
    }
}

/// Split on commas at parenthesis depth zero, so tuple entries survive.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    out.push(cur);
    out
}

/// Comma-separated element words sharing one symbol binder.
pub fn parse_element_list(s: &str, group: &GroupSpec) -> Result<Vec<GroupElement>> {
    let mut binder = SymbolBinder::new();
    split_top_level(s)
        .iter()
        .map(|w| parse_element_at(w, group, &mut binder, 1))
        .collect()
}

pub fn render_element(group: &GroupSpec, e: &GroupElement) -> String {
    match e {
        GroupElement::Abelian(exps) => {
            if exps.iter().all(|&x| x == 0) {
                "1".to_string()
            } else {
                format!(
                    "({})",
                    exps.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
        }
        GroupElement::Table(i) => {
            let _ = group;
            i.to_string()
        }
    }
}

pub fn render_degree(group: &GroupSpec, d: &Degree) -> String {
    let base = render_element(group, d.t_part());
    match d.g0_power() {
        0 => base,
        1 if base == "1" => "g0".to_string(),
        1 => format!("{base}*g0"),
        k if base == "1" => format!("g0^{k}"),
        k => format!("{base}*g0^{k}"),
    }
}

// --- line-based file formats ---

fn split_kv(line_text: &str, line: usize) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for part in line_text.split_whitespace() {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::parse(line, "key=value pairs"))?;
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Cayley-table file: line 1 `order=<n> identity=<i>`, then `n` lines of
/// `n` space-separated indices.
pub fn parse_cayley_file(input: &str) -> Result<GroupSpec> {
    let mut lines = content_lines(input);
    let (lno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "a header line order=<n> identity=<i>"))?;
    let kv = split_kv(header, lno)?;
    let order: usize = kv
        .get("order")
        .ok_or_else(|| Error::parse(lno, "order=<n> in the header"))?
        .parse()
        .map_err(|_| Error::parse(lno, "an integer order"))?;
    if order == 0 || order > crate::groups::MAX_TABLE_ORDER {
        return Err(Error::parse(lno, "an order between 1 and 256"));
    }
    let identity: usize = kv
        .get("identity")
        .ok_or_else(|| Error::parse(lno, "identity=<i> in the header"))?
        .parse()
        .map_err(|_| Error::parse(lno, "an integer identity index"))?;
    let mut cayley = Vec::with_capacity(order);
    for _ in 0..order {
        let (lno, row_text) = lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("{order} table rows")))?;
        let row: Vec<usize> = row_text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(lno, "space-separated indices"))
            })
            .collect::<Result<_>>()?;
        if row.len() != order {
            return Err(Error::parse(lno, format!("{order} entries in the row")));
        }
        cayley.push(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(Error::parse(lno, "end of file after the table"));
    }
    GroupSpec::table(cayley, identity).map_err(|e| Error::parse(1, e.to_string()))
}

pub fn render_cayley_file(group: &GroupSpec) -> Result<String> {
    match group {
        GroupSpec::Table {
            order,
            cayley,
            identity,
        } => {
            let mut out = format!("order={order} identity={identity}\n");
            for row in cayley {
                out.push_str(
                    &row.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                );
                out.push('\n');
            }
            Ok(out)
        }
        GroupSpec::Abelian { .. } => Err(Error::Unsupported(
            "Cayley files describe table groups; use a group literal".into(),
        )),
    }
}

/// Cocycle file: line 1 `group=<literal> N=<int>`, then lines
/// `<u-index> <v-index> <exponent>`; missing pairs default to exponent 0.
pub fn parse_cocycle_file(input: &str) -> Result<Cocycle> {
    let mut lines = content_lines(input);
    let (lno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "a header line group=<literal> N=<int>"))?;
    let kv = split_kv(header, lno)?;
    let group = parse_group_literal_at(
        kv.get("group")
            .ok_or_else(|| Error::parse(lno, "group=<literal> in the header"))?,
        lno,
    )?;
    let n: u64 = kv
        .get("N")
        .ok_or_else(|| Error::parse(lno, "N=<int> in the header"))?
        .parse()
        .map_err(|_| Error::parse(lno, "an integer modulus N"))?;
    if n == 0 || n > MAX_ROOT_ORDER {
        return Err(Error::parse(lno, "a modulus N between 1 and 4096"));
    }
    let order = group.order();
    let mut table = vec![vec![0u64; order]; order];
    let mut seen = vec![vec![false; order]; order];
    for (lno, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(lno, "<u-index> <v-index> <exponent>"));
        }
        let u: usize = fields[0]
            .parse()
            .map_err(|_| Error::parse(lno, "an integer u-index"))?;
        let v: usize = fields[1]
            .parse()
            .map_err(|_| Error::parse(lno, "an integer v-index"))?;
        let e: u64 = fields[2]
            .parse()
            .map_err(|_| Error::parse(lno, "an integer exponent"))?;
        if u >= order || v >= order {
            return Err(Error::parse(lno, "indices below the group order"));
        }
        if seen[u][v] {
            return Err(Error::parse(
                lno,
                format!("a single entry for pair ({u}, {v})"),
            ));
        }
        seen[u][v] = true;
        table[u][v] = e % n;
    }
    Cocycle::new(group, n, table)
}

pub fn render_cocycle_file(c: &Cocycle) -> Result<String> {
    let mut out = format!(
        "group={} N={}\n",
        render_group_literal(c.group())?,
        c.modulus()
    );
    let order = c.group().order();
    for u in 0..order {
        for v in 0..order {
            let e = c.exponent_at(u, v);
            if e != 0 {
                out.push_str(&format!("{u} {v} {e}\n"));
            }
        }
    }
    Ok(out)
}

/// Triangular matrix file: `n=<k>` then `k(k+1)/2` upper-triangle entries
/// row-major, one scalar expression per line.
pub fn parse_ut_matrix_file(input: &str) -> Result<UtMatrix> {
    let mut lines = content_lines(input);
    let (lno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "a header line n=<k>"))?;
    let kv = split_kv(header, lno)?;
    let n: usize = kv
        .get("n")
        .ok_or_else(|| Error::parse(lno, "n=<k> in the header"))?
        .parse()
        .map_err(|_| Error::parse(lno, "an integer size"))?;
    if n == 0 || n > 64 {
        return Err(Error::parse(lno, "a size between 1 and 64"));
    }
    let want = n * (n + 1) / 2;
    let mut entries = Vec::with_capacity(want);
    for (lno, text) in lines {
        if entries.len() == want {
            return Err(Error::parse(lno, "end of file after the triangle"));
        }
        entries.push(parse_scalar_at(text, lno)?);
    }
    if entries.len() != want {
        return Err(Error::parse(0, format!("{want} entry lines")));
    }
    UtMatrix::from_upper_entries(n, entries)
}

pub fn render_ut_matrix_file(m: &UtMatrix) -> String {
    let mut out = format!("n={}\n", m.n());
    for e in m.upper_entries() {
        out.push_str(&render_scalar(e));
        out.push('\n');
    }
    out
}

// --- matrix involution spec (JSON) and action files ---

/// JSON spec for the `M_k(D)` commands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixSpecFile {
    pub group: String,
    #[serde(rename = "N")]
    pub n: u64,
    /// Path of a cocycle file, relative to the spec file; omitted means
    /// the trivial cocycle (plain group algebra).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_file: Option<String>,
    /// `t:<element word>`, `formal2` or `free`.
    pub g0: String,
    /// `+1` or `-1`.
    pub eps: i32,
    /// Degree words over the group symbols and `g0`.
    pub gamma: Vec<String>,
}

pub fn parse_matrix_spec(input: &str) -> Result<MatrixSpecFile> {
    serde_json::from_str(input).map_err(|e| Error::parse(e.line(), e.to_string()))
}

/// Resolved spec data: the algebra, degree context and degree list.
pub struct ResolvedSpec {
    pub group: GroupSpec,
    pub sigma: Cocycle,
    pub ctx: DegreeCtx,
    pub gamma: Vec<Degree>,
    pub eps: i8,
}

impl MatrixSpecFile {
    /// Resolve against an already-loaded cocycle body (or none).
    pub fn resolve(&self, sigma_body: Option<&str>) -> Result<ResolvedSpec> {
        let group = parse_group_literal(&self.group)?;
        if self.n == 0 || self.n > MAX_ROOT_ORDER {
            return Err(Error::domain("N out of range"));
        }
        let sigma = match (self.sigma_file.as_ref(), sigma_body) {
            (Some(_), Some(body)) => {
                let c = parse_cocycle_file(body)?;
                if c.group() != &group || c.modulus() != self.n {
                    return Err(Error::domain(
                        "cocycle file group/N does not match the spec",
                    ));
                }
                c
            }
            (Some(_), None) => return Err(Error::domain("sigma_file named but no body supplied")),
            (None, _) => Cocycle::trivial(group.clone(), self.n),
        };
        let mut binder = SymbolBinder::new();
        let mode = if self.g0 == "formal2" {
            G0Mode::Formal2
        } else if self.g0 == "free" {
            G0Mode::Free
        } else if let Some(word) = self.g0.strip_prefix("t:") {
            G0Mode::InT(parse_element(word, &group, &mut binder)?)
        } else {
            return Err(Error::domain("g0 must be t:<element>, formal2, or free"));
        };
        let ctx = DegreeCtx::new(group.clone(), mode)?;
        let gamma = self
            .gamma
            .iter()
            .map(|w| parse_degree_word(w, &ctx, &mut binder))
            .collect::<Result<Vec<_>>>()?;
        let eps = match self.eps {
            1 => 1,
            -1 => -1,
            _ => return Err(Error::domain("eps must be +1 or -1")),
        };
        Ok(ResolvedSpec {
            group,
            sigma,
            ctx,
            gamma,
            eps,
        })
    }
}

/// Involution action file for `M_k(D)`: header `k=<k> group=<lit> N=<n>`,
/// then one line per homogeneous unit in row-major `(i, j, u)` order:
/// `unit <i> <j> <u> = c0 ; c1 ; ...` listing the image coordinates over
/// all units in the same order.
pub fn parse_psi_action_file(
    input: &str,
) -> Result<(usize, GroupSpec, u64, Vec<Vec<CycRational>>)> {
    let mut lines = content_lines(input);
    let (lno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "a header line k=<k> group=<lit> N=<n>"))?;
    let kv = split_kv(header, lno)?;
    let k: usize = kv
        .get("k")
        .ok_or_else(|| Error::parse(lno, "k=<k> in the header"))?
        .parse()
        .map_err(|_| Error::parse(lno, "an integer k"))?;
    if k == 0 || k > 16 {
        return Err(Error::parse(lno, "a rank between 1 and 16"));
    }
    let group = parse_group_literal_at(
        kv.get("group")
            .ok_or_else(|| Error::parse(lno, "group=<literal> in the header"))?,
        lno,
    )?;
    let n: u64 = kv
        .get("N")
        .ok_or_else(|| Error::parse(lno, "N=<int> in the header"))?
        .parse()
        .map_err(|_| Error::parse(lno, "an integer modulus N"))?;
    if n == 0 || n > MAX_ROOT_ORDER {
        return Err(Error::parse(lno, "a modulus N between 1 and 4096"));
    }
    let dim = group.order();
    let units = k * k * dim;
    let mut rows: Vec<Option<Vec<CycRational>>> = vec![None; units];
    for (lno, text) in lines {
        let rest = text
            .strip_prefix("unit")
            .ok_or_else(|| Error::parse(lno, "a line starting with `unit`"))?;
        let (coords, values) = rest
            .split_once('=')
            .ok_or_else(|| Error::parse(lno, "unit <i> <j> <u> = entries"))?;
        let idx: Vec<usize> = coords
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(lno, "unit indices"))
            })
            .collect::<Result<_>>()?;
        if idx.len() != 3 || idx[0] >= k || idx[1] >= k || idx[2] >= dim {
            return Err(Error::parse(lno, "unit <i> <j> <u> within range"));
        }
        let flat = (idx[0] * k + idx[1]) * dim + idx[2];
        if rows[flat].is_some() {
            return Err(Error::parse(lno, "a single line per unit"));
        }
        let entries: Vec<CycRational> = values
            .split(';')
            .map(|t| parse_scalar_at(t, lno))
            .collect::<Result<_>>()?;
        if entries.len() != units {
            return Err(Error::parse(lno, format!("{units} image coordinates")));
        }
        rows[flat] = Some(entries);
    }
    let rows: Vec<Vec<CycRational>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| Error::parse(0, format!("a line for unit {i}"))))
        .collect::<Result<_>>()?;
    Ok((k, group, n, rows))
}

pub fn render_psi_action_file(
    k: usize,
    group: &GroupSpec,
    n: u64,
    rows: &[Vec<CycRational>],
) -> Result<String> {
    let dim = group.order();
    let mut out = format!("k={k} group={} N={n}\n", render_group_literal(group)?);
    for i in 0..k {
        for j in 0..k {
            for u in 0..dim {
                let flat = (i * k + j) * dim + u;
                let body = rows[flat]
                    .iter()
                    .map(render_scalar)
                    .collect::<Vec<_>>()
                    .join(" ; ");
                out.push_str(&format!("unit {i} {j} {u} = {body}\n"));
            }
        }
    }
    Ok(out)
}
