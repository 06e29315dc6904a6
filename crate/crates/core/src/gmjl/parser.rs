//! Recursive-descent parser. Binding strength, tightest first: prefix
//! operators (`~ W M GW GM <>n E_n`), `&`, `|`, `->`. `&` and `|` associate
//! to the left, `->` to the right.

use super::ast::Formula;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("malformed index in {0:?}; expected digits")]
    MalformedIndex(String),
    #[error("unclosed '('")]
    UnclosedParen,
    #[error("unmatched ')'")]
    UnmatchedParen,
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

/// `position` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {position}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(String),
    Not,
    And,
    Or,
    Implies,
    Open,
    Close,
    W,
    M,
    GW,
    GM,
    Diamond(u64),
    E(u64),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Atom(p) => format!("atom {p:?}"),
            Token::Not => "'~'".into(),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::Implies => "'->'".into(),
            Token::Open => "'('".into(),
            Token::Close => "')'".into(),
            Token::W => "'W'".into(),
            Token::M => "'M'".into(),
            Token::GW => "'GW'".into(),
            Token::GM => "'GM'".into(),
            Token::Diamond(n) => format!("'<>{n}'"),
            Token::E(n) => format!("'E_{n}'"),
        }
    }
}

fn err(kind: ParseErrorKind, position: usize) -> ParseError {
    ParseError { kind, position }
}

fn parse_index(text: &str, digits: &str, position: usize) -> Result<u64, ParseError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(ParseErrorKind::MalformedIndex(text.into()), position));
    }
    digits
        .parse()
        .map_err(|_| err(ParseErrorKind::MalformedIndex(text.into()), position))
}

fn lex(input: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let word_end = |from: usize| {
            let mut j = from;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            j
        };
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::Open,
            b')' => Token::Close,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'>') => {
                let end = word_end(i + 2);
                let n = parse_index(&input[start..end.max(i + 2)], &input[i + 2..end], start)?;
                i = end - 1;
                Token::Diamond(n)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let end = word_end(i);
                let word = &input[start..end];
                i = end - 1;
                match word {
                    "W" => Token::W,
                    "M" => Token::M,
                    "GW" => Token::GW,
                    "GM" => Token::GM,
                    _ => match word.strip_prefix("E_") {
                        Some(digits) => Token::E(parse_index(word, digits, start)?),
                        None => Token::Atom(word.to_string()),
                    },
                }
            }
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(err(ParseErrorKind::UnexpectedChar(ch), start));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Token::Implies) {
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        let Some((tok, _)) = self.tokens.get(self.pos).cloned() else {
            return Err(err(ParseErrorKind::UnexpectedEnd, at));
        };
        self.pos += 1;
        Ok(match tok {
            Token::Atom(p) => Formula::Atom(p),
            Token::Not => Formula::negate(self.unary()?),
            Token::W => Formula::w(self.unary()?),
            Token::M => Formula::m(self.unary()?),
            Token::GW => Formula::gw(self.unary()?),
            Token::GM => Formula::gm(self.unary()?),
            Token::Diamond(n) => Formula::diamond(n, self.unary()?),
            Token::E(n) => Formula::e(n, self.unary()?),
            Token::Open => {
                let inner = self.implication()?;
                match self.peek() {
                    Some(Token::Close) => {
                        self.pos += 1;
                        inner
                    }
                    None => return Err(err(ParseErrorKind::UnclosedParen, at)),
                    Some(t) => {
                        let kind = ParseErrorKind::UnexpectedToken(t.describe());
                        return Err(err(kind, self.offset()));
                    }
                }
            }
            Token::Close => return Err(err(ParseErrorKind::UnmatchedParen, at)),
            t => return Err(err(ParseErrorKind::UnexpectedToken(t.describe()), at)),
        })
    }
}

pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    let tokens = lex(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: input.len(),
    };
    let f = p.implication()?;
    match p.peek() {
        None => Ok(f),
        Some(Token::Close) => Err(err(ParseErrorKind::UnmatchedParen, p.offset())),
        Some(t) => Err(err(
            ParseErrorKind::UnexpectedToken(t.describe()),
            p.offset(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    fn kind(input: &str) -> (ParseErrorKind, usize) {
        let e = parse_formula(input).unwrap_err();
        (e.kind, e.position)
    }

    #[test]
    fn basic_shapes() {
        assert_eq!(
            parse_formula("p & W ~p").unwrap(),
            Formula::and(p(), Formula::w(Formula::negate(p())))
        );
        assert_eq!(parse_formula("<>2 p").unwrap(), Formula::diamond(2, p()));
        assert_eq!(parse_formula("E_3 p").unwrap(), Formula::e(3, p()));
        assert_eq!(
            parse_formula("GM p & M ~p").unwrap(),
            Formula::and(Formula::gm(p()), Formula::m(Formula::negate(p())))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let q = || Formula::atom("q");
        assert_eq!(
            parse_formula("p | q & p").unwrap(),
            Formula::or(p(), Formula::and(q(), p()))
        );
        assert_eq!(
            parse_formula("p -> q -> p").unwrap(),
            Formula::implies(p(), Formula::implies(q(), p()))
        );
        assert_eq!(
            parse_formula("p | q | p").unwrap(),
            Formula::or(Formula::or(p(), q()), p())
        );
        assert_eq!(
            parse_formula("~(p | q)").unwrap(),
            Formula::negate(Formula::or(p(), q()))
        );
        assert_eq!(
            parse_formula("p|q->p&q").unwrap(),
            Formula::implies(Formula::or(p(), q()), Formula::and(p(), q()))
        );
    }

    #[test]
    fn errors() {
        assert_eq!(kind("(p & q"), (ParseErrorKind::UnclosedParen, 0));
        assert_eq!(kind("p)"), (ParseErrorKind::UnmatchedParen, 1));
        assert_eq!(
            kind("<>x p").0,
            ParseErrorKind::MalformedIndex("<>x".into())
        );
        assert_eq!(kind("<> p").0, ParseErrorKind::MalformedIndex("<>".into()));
        assert_eq!(kind("E_ p").0, ParseErrorKind::MalformedIndex("E_".into()));
        assert_eq!(
            kind("E_1a p").0,
            ParseErrorKind::MalformedIndex("E_1a".into())
        );
        assert_eq!(kind("p & "), (ParseErrorKind::UnexpectedEnd, 4));
        assert_eq!(kind("p $ q"), (ParseErrorKind::UnexpectedChar('$'), 2));
        assert_eq!(kind("p q").1, 2);
        assert_eq!(kind("").0, ParseErrorKind::UnexpectedEnd);
    }

    #[test]
    fn prints_back() {
        for s in [
            "p & W ~p",
            "(p | q) & r",
            "p -> q -> r",
            "~(p & q)",
            "<>0 E_2 GW ~p",
        ] {
            let f = parse_formula(s).unwrap();
            assert_eq!(f.to_string(), s);
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }
}
