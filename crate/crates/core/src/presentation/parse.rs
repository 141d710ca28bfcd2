//! Text formats: the presentation DSL `< x, y | x^4, y^2 >` and the
//! three-stanza split description file.

use std::fmt;

use serde::Serialize;

use super::word::{GenId, Word};
use crate::error::PresentationError;

/// Generators plus relators, each relator a word that equals the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Word>,
}

/// How one complement generator acts: kernel generator `i` is sent to the
/// given word over kernel generators. Unlisted kernel generators are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionRule {
    pub complement_generator: usize,
    pub images: Vec<(usize, Word)>,
}

/// Presentations of `K` and `A` together with the action of `A`'s
/// generators on `K`'s generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitDescription {
    pub kernel: Presentation,
    pub complement: Presentation,
    pub action: Vec<ActionRule>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generators.join(", "))?;
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r.display(&self.generators))?;
        }
        f.write_str(" >")
    }
}

impl fmt::Display for SplitDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "K: {}", self.kernel)?;
        writeln!(f, "A: {}", self.complement)?;
        for rule in &self.action {
            write!(f, "action: {}:", self.complement.generators[rule.complement_generator])?;
            for (i, (k, w)) in rule.images.iter().enumerate() {
                let sep = if i == 0 { " " } else { "; " };
                write!(
                    f,
                    "{sep}{} -> {}",
                    self.kernel.generators[*k],
                    w.display(&self.kernel.generators)
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl SplitDescription {
    /// Combined alphabet `X ∪ Y`: kernel generators, then complement ones.
    pub fn generator_names(&self) -> Vec<String> {
        self.kernel
            .generators
            .iter()
            .chain(&self.complement.generators)
            .cloned()
            .collect()
    }

    /// Same description with every generator name passed through `rename`.
    pub fn renamed(&self, mut rename: impl FnMut(&str) -> String) -> SplitDescription {
        let mut out = self.clone();
        for g in out
            .kernel
            .generators
            .iter_mut()
            .chain(out.complement.generators.iter_mut())
        {
            *g = rename(g);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LAngle,
    RAngle,
    Pipe,
    Comma,
    Caret,
    Colon,
    Semicolon,
    Arrow,
    Int(i64),
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LAngle => f.write_str("'<'"),
            Tok::RAngle => f.write_str("'>'"),
            Tok::Pipe => f.write_str("'|'"),
            Tok::Comma => f.write_str("','"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Colon => f.write_str("':'"),
            Tok::Semicolon => f.write_str("';'"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::Int(i) => write!(f, "integer {i}"),
            Tok::Ident(s) => write!(f, "name '{s}'"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
    end: Pos,
    at: usize,
}

impl Lexer {
    fn new(text: &str, line: usize, first_column: usize) -> Result<Self, PresentationError> {
        let mut toks = Vec::new();
        let mut pos = Pos {
            line,
            column: first_column,
        };
        let mut chars = text.chars().peekable();
        while let Some(&c) = chars.peek() {
            let here = pos;
            let bump = |pos: &mut Pos, c: char| {
                if c == '\n' {
                    pos.line += 1;
                    pos.column = 1;
                } else {
                    pos.column += 1;
                }
            };
            if c.is_whitespace() {
                chars.next();
                bump(&mut pos, c);
                continue;
            }
            let single = match c {
                '<' => Some(Tok::LAngle),
                '>' => Some(Tok::RAngle),
                '|' => Some(Tok::Pipe),
                ',' => Some(Tok::Comma),
                '^' => Some(Tok::Caret),
                ':' => Some(Tok::Colon),
                ';' => Some(Tok::Semicolon),
                _ => None,
            };
            if let Some(t) = single {
                chars.next();
                bump(&mut pos, c);
                toks.push((t, here));
            } else if c == '-' || c.is_ascii_digit() {
                let mut s = String::new();
                s.push(c);
                chars.next();
                bump(&mut pos, c);
                if c == '-' && chars.peek() == Some(&'>') {
                    chars.next();
                    bump(&mut pos, '>');
                    toks.push((Tok::Arrow, here));
                    continue;
                }
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                    bump(&mut pos, d);
                }
                let n = s.parse::<i64>().map_err(|_| syntax(here, format!("invalid integer '{s}'")))?;
                toks.push((Tok::Int(n), here));
            } else if c.is_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                    s.push(d);
                    chars.next();
                    bump(&mut pos, d);
                }
                toks.push((Tok::Ident(s), here));
            } else {
                return Err(syntax(here, format!("unexpected character '{c}'")));
            }
        }
        Ok(Lexer { toks, end: pos, at: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, PresentationError> {
        match self.next() {
            Some((t, p)) if t == want => Ok(p),
            Some((t, p)) => Err(syntax(p, format!("expected {want}, found {t}"))),
            None => Err(syntax(self.end, format!("expected {want}, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), PresentationError> {
        match self.next() {
            Some((Tok::Ident(s), p)) => Ok((s, p)),
            Some((t, p)) => Err(syntax(p, format!("expected a generator name, found {t}"))),
            None => Err(syntax(self.end, "expected a generator name, found end of input")),
        }
    }

    fn finish(&self) -> Result<(), PresentationError> {
        match self.toks.get(self.at) {
            Some((t, p)) => Err(syntax(*p, format!("unexpected trailing {t}"))),
            None => Ok(()),
        }
    }

    /// `term+` where `term := name ("^" integer)?`, stopping at any token that
    /// cannot start a term. A lone `1` is the empty word.
    fn word(&mut self, names: &[String]) -> Result<Word, PresentationError> {
        // `1` is how an empty (freely trivial) word prints
        if self.peek() == Some(&Tok::Int(1)) {
            self.next();
            return Ok(Word::empty());
        }
        let mut factors = Vec::new();
        while let Some(Tok::Ident(_)) = self.peek() {
            let (name, p) = self.ident()?;
            let id = names
                .iter()
                .position(|n| *n == name)
                .ok_or(PresentationError::UnknownGenerator {
                    name,
                    line: p.line,
                    column: p.column,
                })?;
            let mut exp = 1;
            if self.peek() == Some(&Tok::Caret) {
                self.next();
                match self.next() {
                    Some((Tok::Int(0), p)) => {
                        return Err(syntax(p, "zero exponents are not allowed"));
                    }
                    Some((Tok::Int(n), _)) => exp = n,
                    Some((t, p)) => return Err(syntax(p, format!("expected an exponent, found {t}"))),
                    None => return Err(syntax(self.end, "expected an exponent, found end of input")),
                }
            }
            factors.push((GenId(id), exp));
        }
        if factors.is_empty() {
            let p = self.pos();
            let found = self.peek().map_or("end of input".to_string(), Tok::to_string);
            return Err(syntax(p, format!("expected a word, found {found}")));
        }
        Ok(Word::from_factors(factors))
    }

    fn presentation(&mut self) -> Result<Presentation, PresentationError> {
        self.expect(Tok::LAngle)?;
        let mut generators: Vec<String> = Vec::new();
        loop {
            let (name, p) = self.ident()?;
            if generators.contains(&name) {
                return Err(PresentationError::DuplicateGenerator {
                    name,
                    line: p.line,
                    column: p.column,
                });
            }
            generators.push(name);
            if self.peek() == Some(&Tok::Comma) {
                self.next();
            } else {
                break;
            }
        }
        self.expect(Tok::Pipe)?;
        let mut relations = vec![self.word(&generators)?];
        while self.peek() == Some(&Tok::Comma) {
            self.next();
            relations.push(self.word(&generators)?);
        }
        self.expect(Tok::RAngle)?;
        Ok(Presentation {
            generators,
            relations,
        })
    }
}

fn syntax(p: Pos, message: impl Into<String>) -> PresentationError {
    PresentationError::Syntax {
        line: p.line,
        column: p.column,
        message: message.into(),
    }
}

/// Parses `< gens | rels >`. Whitespace, including newlines, is ignored.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut lx = Lexer::new(text, 1, 1)?;
    let p = lx.presentation()?;
    lx.finish()?;
    Ok(p)
}

/// Parses a split description file:
///
/// ```text
/// K: <a, b | a^2, b^2, a b a^-1 b^-1>
/// A: <c | c^2>
/// action: c: a -> b; b -> a
/// ```
///
/// Blank lines and lines starting with `#` are skipped. There is at most one
/// `action:` line per complement generator.
pub fn parse_split_description(text: &str) -> Result<SplitDescription, PresentationError> {
    let mut kernel: Option<Presentation> = None;
    let mut complement: Option<Presentation> = None;
    let mut action_lines: Vec<(usize, usize, &str)> = Vec::new();
    let mut complement_src: Option<(usize, usize, &str)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        let Some(colon) = trimmed.find(':') else {
            return Err(PresentationError::Syntax {
                line,
                column: indent + 1,
                message: "expected 'K:', 'A:' or 'action:'".into(),
            });
        };
        let key = trimmed[..colon].trim();
        let rest = &trimmed[colon + 1..];
        let rest_col = indent + colon + 2;
        let slot = match key {
            "K" => &mut kernel,
            "A" => &mut complement,
            "action" => {
                action_lines.push((line, rest_col, rest));
                continue;
            }
            other => {
                return Err(PresentationError::Syntax {
                    line,
                    column: indent + 1,
                    message: format!("unknown stanza '{other}'"),
                })
            }
        };
        if slot.is_some() {
            return Err(PresentationError::Syntax {
                line,
                column: indent + 1,
                message: format!("stanza '{key}' given twice"),
            });
        }
        if key == "A" {
            complement_src = Some((line, rest_col, rest));
        }
        let mut lx = Lexer::new(rest, line, rest_col)?;
        *slot = Some(lx.presentation()?);
        lx.finish()?;
    }

    let end_line = text.lines().count().max(1);
    let missing = |what: &str| PresentationError::Syntax {
        line: end_line,
        column: 1,
        message: format!("missing '{what}:' stanza"),
    };
    let kernel = kernel.ok_or_else(|| missing("K"))?;
    let complement = complement.ok_or_else(|| missing("A"))?;

    // generator names must be unique across K and A
    if let Some(name) = complement
        .generators
        .iter()
        .find(|n| kernel.generators.contains(n))
    {
        let (line, col, src) = complement_src.expect("complement was parsed");
        let lx = Lexer::new(src, line, col)?;
        let p = lx
            .toks
            .iter()
            .find(|(t, _)| *t == Tok::Ident(name.clone()))
            .map_or(Pos { line, column: col }, |(_, p)| *p);
        return Err(PresentationError::DuplicateGenerator {
            name: name.clone(),
            line: p.line,
            column: p.column,
        });
    }

    let mut action: Vec<ActionRule> = Vec::new();
    for (line, col, rest) in action_lines {
        let mut lx = Lexer::new(rest, line, col)?;
        let (cname, cpos) = lx.ident()?;
        let complement_generator = complement
            .generators
            .iter()
            .position(|n| *n == cname)
            .ok_or(PresentationError::UnknownGenerator {
                name: cname.clone(),
                line: cpos.line,
                column: cpos.column,
            })?;
        if action.iter().any(|r| r.complement_generator == complement_generator) {
            return Err(syntax(cpos, format!("action of '{cname}' given twice")));
        }
        lx.expect(Tok::Colon)?;
        let mut images: Vec<(usize, Word)> = Vec::new();
        loop {
            let (kname, kpos) = lx.ident()?;
            let k = kernel
                .generators
                .iter()
                .position(|n| *n == kname)
                .ok_or(PresentationError::UnknownGenerator {
                    name: kname.clone(),
                    line: kpos.line,
                    column: kpos.column,
                })?;
            if images.iter().any(|(j, _)| *j == k) {
                return Err(syntax(kpos, format!("image of '{kname}' given twice")));
            }
            lx.expect(Tok::Arrow)?;
            images.push((k, lx.word(&kernel.generators)?));
            match lx.peek() {
                Some(Tok::Semicolon) => {
                    lx.next();
                }
                _ => break,
            }
        }
        lx.finish()?;
        action.push(ActionRule {
            complement_generator,
            images,
        });
    }
    action.sort_by_key(|r| r.complement_generator);

    Ok(SplitDescription {
        kernel,
        complement,
        action,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_presentation() {
        let p = parse_presentation("< x | x^4 >").unwrap();
        assert_eq!(p.generators, vec!["x"]);
        assert_eq!(p.relations, vec![Word::single(GenId(0), 4)]);
    }

    #[test]
    fn klein_presentation() {
        let p = parse_presentation("< a, b | a^2, b^2, a b a^-1 b^-1 >").unwrap();
        assert_eq!(p.generators, vec!["a", "b"]);
        assert_eq!(p.relations.len(), 3);
        assert_eq!(p.relations[2].len(), 4);
        assert_eq!(p.to_string(), "< a, b | a^2, b^2, a b a^-1 b^-1 >");
    }

    #[test]
    fn trivial_relator_round_trips() {
        let p = parse_presentation("< x | x^2, x x^-1 >").unwrap();
        assert!(p.relations[1].is_empty());
        assert_eq!(p.to_string(), "< x | x^2, 1 >");
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_presentation("<x|x^4>").unwrap();
        let b = parse_presentation("  <\n x \n|\n x ^ 4 >\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_exponent_is_a_syntax_error() {
        let e = parse_presentation("< x | x^0 >").unwrap_err();
        assert_eq!(
            e,
            PresentationError::Syntax {
                line: 1,
                column: 9,
                message: "zero exponents are not allowed".into()
            }
        );
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            parse_presentation("< x, x | x^2 >"),
            Err(PresentationError::DuplicateGenerator { column: 6, .. })
        ));
        assert!(matches!(
            parse_presentation("< x | y^2 >"),
            Err(PresentationError::UnknownGenerator { column: 7, .. })
        ));
        assert!(matches!(
            parse_presentation("< x | x^2"),
            Err(PresentationError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("< x | x^2 > extra"),
            Err(PresentationError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("< x | >"),
            Err(PresentationError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("< x | x^ >"),
            Err(PresentationError::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("< x | x$ >"),
            Err(PresentationError::Syntax { column: 8, .. })
        ));
    }

    #[test]
    fn split_file_example() {
        let d = parse_split_description(
            "K: <a,b|a^2,b^2,a b a^-1 b^-1>\nA: <c|c^2>\naction: c: a -> b; b -> a\n",
        )
        .unwrap();
        assert_eq!(d.generator_names(), vec!["a", "b", "c"]);
        assert_eq!(d.action.len(), 1);
        assert_eq!(
            d.action[0].images,
            vec![(0, Word::single(GenId(1), 1)), (1, Word::single(GenId(0), 1))]
        );
        let again = parse_split_description(&d.to_string()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn split_file_errors_carry_positions() {
        let e = parse_split_description("K: <x|x^4>\nA: <y|y^2>\naction: y: x -> z\n").unwrap_err();
        assert_eq!(
            e,
            PresentationError::UnknownGenerator {
                name: "z".into(),
                line: 3,
                column: 17
            }
        );
        let e = parse_split_description("K: <x|x^4>\n\n# comment\nA: <y|y^2\n").unwrap_err();
        assert!(matches!(e, PresentationError::Syntax { line: 4, .. }));
        assert!(matches!(
            parse_split_description("K: <x|x^4>\n"),
            Err(PresentationError::Syntax { .. })
        ));
        assert!(matches!(
            parse_split_description("K: <x|x^4>\nA: <x|x^2>\n"),
            Err(PresentationError::DuplicateGenerator { line: 2, .. })
        ));
        assert!(matches!(
            parse_split_description("K: <x|x^4>\nA: <y|y^2>\naction: y: x -> x^-1\naction: y: x -> x\n"),
            Err(PresentationError::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            parse_split_description("K: <x|x^4>\nB: <y|y^2>\n"),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
    }
}
