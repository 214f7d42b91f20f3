//! Line-based text formats.
//!
//! Machines (`RTM1`):
//!
//! ```text
//! RTM1
//! d=1 n=2 k=1
//! F= (0),(1)
//! G= (0)
//! 0 0 | 1 -> 0 | 1 | (0)
//! ...
//! ```
//!
//! One table line per left-hand side, in index order: the pattern over `F`
//! in sorted order, the state, the symbols written on `G`, the new state and
//! the move. `#` starts a comment. The same header (first two lines) is used
//! by configurations (`CFG1`) and generator words (`WORD1`); certificates
//! (`CERT1`) are one-dimensional and carry no dims line.

use std::fmt::Write as _;

use crate::config::HeadConfiguration;
use crate::error::{Error, Result};
use crate::machine::Machine;
use crate::rule::{make_rule, Entry};
use crate::synthesis::{GeneratorToken, GeneratorWord};
use crate::torsion::EscapeCertificate;
use crate::vector::{Dims, IntVector};

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn dims_line(d: Dims) -> String {
    format!("d={} n={} k={}", d.d, d.n, d.k)
}

pub fn serialize_machine(m: &Machine) -> String {
    let rule = m.rule();
    let mut s = String::new();
    writeln!(s, "RTM1").unwrap();
    writeln!(s, "{}", dims_line(m.dims())).unwrap();
    writeln!(s, "F= {}", join(rule.read_support(), ",")).unwrap();
    writeln!(s, "G= {}", join(rule.write_support(), ",")).unwrap();
    for e in rule.entries() {
        let mut line = String::new();
        for p in &e.pattern {
            write!(line, "{p} ").unwrap();
        }
        write!(line, "| {} ->", e.state).unwrap();
        for o in &e.out {
            write!(line, " {o}").unwrap();
        }
        writeln!(line, " | {} | {}", e.out_state, e.mv).unwrap();
        s.push_str(&line);
    }
    s
}

/// Significant lines: comments stripped, blanks skipped, 1-based numbers.
struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim_end()))
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let last = self.items.last().map_or(1, |x| x.0);
        let item = self.items.get(self.pos).copied().ok_or(Error::Syntax {
            line: last,
            col: 1,
            msg: format!("expected {what}, found end of input"),
        })?;
        self.pos += 1;
        Ok(item)
    }

    fn rest(&mut self) -> Vec<(usize, &'a str)> {
        let r = self.items[self.pos..].to_vec();
        self.pos = self.items.len();
        r
    }
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn col_of(line: &str, part: &str) -> usize {
    (part.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

fn expect_magic(lines: &mut Lines, magic: &str) -> Result<()> {
    let (no, l) = lines.next(magic)?;
    if l.trim() != magic {
        return Err(syntax(no, 1, format!("expected `{magic}`")));
    }
    Ok(())
}

fn parse_num<T: std::str::FromStr>(no: usize, line: &str, tok: &str) -> Result<T> {
    tok.trim()
        .parse()
        .map_err(|_| syntax(no, col_of(line, tok), format!("bad number `{}`", tok.trim())))
}

/// `key=value` pairs separated by whitespace.
fn keyed<'a>(no: usize, line: &'a str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let mut out = vec![None; keys.len()];
    for tok in line.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| syntax(no, col_of(line, tok), format!("expected key=value, found `{tok}`")))?;
        let i = keys
            .iter()
            .position(|&x| x == k)
            .ok_or_else(|| syntax(no, col_of(line, tok), format!("unknown key `{k}`")))?;
        out[i] = Some(v);
    }
    out.into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| syntax(no, 1, format!("missing `{k}=`"))))
        .collect()
}

fn parse_dims(lines: &mut Lines) -> Result<Dims> {
    let (no, l) = lines.next("dims line")?;
    let v = keyed(no, l, &["d", "n", "k"])?;
    let d: usize = parse_num(no, l, v[0])?;
    let n: u32 = parse_num(no, l, v[1])?;
    let k: u32 = parse_num(no, l, v[2])?;
    if d == 0 || n == 0 || k == 0 {
        return Err(syntax(no, 1, "d, n and k must be positive"));
    }
    Ok(Dims::new(d, n, k))
}

/// Parse `(a,b)`.
pub fn parse_vector(no: usize, line: &str, tok: &str) -> Result<IntVector> {
    let t = tok.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| syntax(no, col_of(line, tok), format!("expected a vector, found `{t}`")))?;
    inner
        .split(',')
        .map(|c| parse_num(no, line, c))
        .collect::<Result<Vec<i64>>>()
        .map(IntVector)
}

fn parse_vector_list(no: usize, line: &str, body: &str) -> Result<Vec<IntVector>> {
    let body = body.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_vector(no, line, &body[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(parse_vector(no, line, &body[start..])?);
    Ok(out)
}

fn parse_support(lines: &mut Lines, key: &str, d: usize) -> Result<Vec<IntVector>> {
    let (no, l) = lines.next(key)?;
    let body = l
        .trim_start()
        .strip_prefix(key)
        .ok_or_else(|| syntax(no, 1, format!("expected `{key}`")))?;
    let vs = parse_vector_list(no, l, body)?;
    if let Some(v) = vs.iter().find(|v| v.dim() != d) {
        return Err(syntax(no, 1, format!("vector {v} does not have dimension {d}")));
    }
    Ok(vs)
}

fn parse_symbols(no: usize, line: &str, part: &str) -> Result<Vec<u32>> {
    part.split_whitespace().map(|t| parse_num(no, line, t)).collect()
}

/// Parse an `RTM1` document into a validated, canonical machine.
pub fn parse_rule(text: &str) -> Result<Machine> {
    let mut lines = Lines::new(text);
    expect_magic(&mut lines, "RTM1")?;
    let dims = parse_dims(&mut lines)?;
    let f = parse_support(&mut lines, "F=", dims.d)?;
    let g = parse_support(&mut lines, "G=", dims.d)?;
    let mut table = Vec::new();
    for (no, l) in lines.rest() {
        let parts: Vec<&str> = l.split('|').collect();
        if parts.len() != 4 {
            return Err(syntax(no, 1, "table line needs the form `p | q -> p' | q' | (v)`"));
        }
        let (q, out) = parts[1]
            .split_once("->")
            .ok_or_else(|| syntax(no, col_of(l, parts[1]), "missing `->`"))?;
        let pattern = parse_symbols(no, l, parts[0])?;
        let out = parse_symbols(no, l, out)?;
        if pattern.len() != f.len() {
            return Err(syntax(no, 1, format!("pattern has {} symbols, F has {}", pattern.len(), f.len())));
        }
        if out.len() != g.len() {
            return Err(syntax(no, col_of(l, parts[1]), format!("output has {} symbols, G has {}", out.len(), g.len())));
        }
        let mv = parse_vector(no, l, parts[3])?;
        if mv.dim() != dims.d {
            return Err(syntax(no, col_of(l, parts[3]), "move has the wrong dimension"));
        }
        table.push(Entry {
            pattern,
            state: parse_num(no, l, q)?,
            out,
            out_state: parse_num(no, l, parts[2])?,
            mv,
        });
    }
    let rule = make_rule(dims, f, g, &table).map_err(|e| Error::Validation(Box::new(e)))?;
    Ok(Machine::new(&rule))
}

/// `CFG1`: dims line, `head=(v) state=q` or `head=none`, then `tape=` with
/// `(v):s` items for the nonzero cells.
pub fn serialize_config(c: &HeadConfiguration) -> String {
    let mut s = format!("CFG1\n{}\n", dims_line(c.dims));
    match &c.head {
        Some((h, q)) => writeln!(s, "head={h} state={q}").unwrap(),
        None => writeln!(s, "head=none").unwrap(),
    }
    let cells: Vec<String> = c.cells().map(|(v, x)| format!("{v}:{x}")).collect();
    writeln!(s, "tape= {}", cells.join(" ")).unwrap();
    s
}

pub fn parse_config(text: &str) -> Result<HeadConfiguration> {
    let mut lines = Lines::new(text);
    expect_magic(&mut lines, "CFG1")?;
    let dims = parse_dims(&mut lines)?;
    let (no, l) = lines.next("head line")?;
    let head = if l.trim() == "head=none" {
        None
    } else {
        let v = keyed(no, l, &["head", "state"])?;
        let h = parse_vector(no, l, v[0])?;
        let q: u32 = parse_num(no, l, v[1])?;
        if h.dim() != dims.d || q == 0 || q > dims.k {
            return Err(syntax(no, 1, "head position or state out of range"));
        }
        Some((h, q))
    };
    let (no, l) = lines.next("tape line")?;
    let body = l
        .trim_start()
        .strip_prefix("tape=")
        .ok_or_else(|| syntax(no, 1, "expected `tape=`"))?;
    let mut c = HeadConfiguration::new(dims, head);
    for tok in body.split_whitespace() {
        let (v, x) = tok
            .rsplit_once(':')
            .ok_or_else(|| syntax(no, col_of(l, tok), "expected `(v):symbol`"))?;
        let v = parse_vector(no, l, v)?;
        let x: u32 = parse_num(no, l, x)?;
        if v.dim() != dims.d || x >= dims.n {
            return Err(syntax(no, col_of(l, tok), "cell or symbol out of range"));
        }
        c.set(v, x);
    }
    if let Some((no, _)) = lines.rest().first() {
        return Err(syntax(*no, 1, "trailing input"));
    }
    Ok(c)
}

pub fn serialize_certificate(c: &EscapeCertificate) -> String {
    format!(
        "CERT1\nword= {}\nstate= {}\nphase= {}\ncycle= {}\ndisplacement= {}\n",
        join(&c.word, " "),
        c.state,
        c.phase,
        c.cycle_length,
        c.displacement
    )
}

fn field<'a>(lines: &mut Lines<'a>, key: &str) -> Result<(usize, &'a str, &'a str)> {
    let (no, l) = lines.next(key)?;
    let body = l
        .trim_start()
        .strip_prefix(key)
        .ok_or_else(|| syntax(no, 1, format!("expected `{key}`")))?;
    Ok((no, l, body))
}

pub fn parse_certificate(text: &str) -> Result<EscapeCertificate> {
    let mut lines = Lines::new(text);
    expect_magic(&mut lines, "CERT1")?;
    let (no, l, w) = field(&mut lines, "word=")?;
    let word = parse_symbols(no, l, w)?;
    let (no, l, s) = field(&mut lines, "state=")?;
    let state = parse_num(no, l, s)?;
    let (no, l, p) = field(&mut lines, "phase=")?;
    let phase = parse_num(no, l, p)?;
    let (no, l, c) = field(&mut lines, "cycle=")?;
    let cycle_length = parse_num(no, l, c)?;
    let (no, l, dsp) = field(&mut lines, "displacement=")?;
    let displacement = parse_num(no, l, dsp)?;
    if let Some((no, _)) = lines.rest().first() {
        return Err(syntax(*no, 1, "trailing input"));
    }
    Ok(EscapeCertificate {
        word,
        state,
        phase,
        cycle_length,
        displacement,
    })
}

/// `WORD1`: dims line, then one token per line: `shift <axis> +1|-1`,
/// `swap <axis>` or `perm <images>`.
pub fn serialize_word(w: &GeneratorWord) -> String {
    let mut s = format!("WORD1\n{}\n", dims_line(w.dims));
    for t in &w.tokens {
        match t {
            GeneratorToken::Shift { axis, dir } => writeln!(s, "shift {axis} {dir:+}").unwrap(),
            GeneratorToken::CellSwap(axis) => writeln!(s, "swap {axis}").unwrap(),
            GeneratorToken::WindowPerm(p) => writeln!(s, "perm {}", join(p, " ")).unwrap(),
        }
    }
    s
}

pub fn parse_word(text: &str) -> Result<GeneratorWord> {
    let mut lines = Lines::new(text);
    expect_magic(&mut lines, "WORD1")?;
    let dims = parse_dims(&mut lines)?;
    let mut tokens = Vec::new();
    for (no, l) in lines.rest() {
        let mut it = l.split_whitespace();
        let kind = it.next().unwrap();
        let args: Vec<&str> = it.collect();
        let axis = |i: usize| -> Result<usize> {
            let a: usize = parse_num(no, l, args.get(i).copied().unwrap_or(""))?;
            if a >= dims.d {
                return Err(syntax(no, 1, format!("axis {a} out of range")));
            }
            Ok(a)
        };
        let tok = match kind {
            "shift" if args.len() == 2 => {
                let dir: i8 = match args[1] {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    other => return Err(syntax(no, col_of(l, args[1]), format!("bad direction `{other}`"))),
                };
                GeneratorToken::Shift { axis: axis(0)?, dir }
            }
            "swap" if args.len() == 1 => GeneratorToken::CellSwap(axis(0)?),
            "perm" => GeneratorToken::WindowPerm(
                args.iter()
                    .map(|a| parse_num(no, l, a))
                    .collect::<Result<Vec<usize>>>()?,
            ),
            _ => return Err(syntax(no, 1, format!("unknown token `{l}`"))),
        };
        tokens.push(tok);
    }
    Ok(GeneratorWord { dims, tokens })
}
