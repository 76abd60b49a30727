//! Group words and their text syntax.
//!
//! ```text
//! word      := factor { factor }
//! factor    := atom [ '^' int ]
//! atom      := '1' | generator | '(' word ')' | '[' word ',' word ']'
//! generator := 'x' nat
//! int       := ['-'] nat
//! ```
//!
//! Whitespace is ignored, and `*` or `·` may separate factors.

use std::fmt;

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupWord {
    Identity,
    /// `x_i`, 1-based.
    Generator(usize),
    Product(Vec<GroupWord>),
    Inverse(Box<GroupWord>),
    Power(Box<GroupWord>, i64),
    /// `[a, b] = a^-1 b^-1 a b`.
    Commutator(Box<GroupWord>, Box<GroupWord>),
}

impl GroupWord {
    pub fn generator(i: usize) -> Self {
        GroupWord::Generator(i)
    }

    pub fn product<I: IntoIterator<Item = GroupWord>>(factors: I) -> Self {
        GroupWord::Product(factors.into_iter().collect())
    }

    pub fn inverse(self) -> Self {
        GroupWord::Inverse(Box::new(self))
    }

    pub fn pow(self, k: i64) -> Self {
        GroupWord::Power(Box::new(self), k)
    }

    pub fn commutator(a: GroupWord, b: GroupWord) -> Self {
        GroupWord::Commutator(Box::new(a), Box::new(b))
    }

    /// Left-normed commutator `[[x_{i_1}, x_{i_2}], ..., x_{i_t}]`; a single
    /// index gives the generator itself.
    pub fn left_normed(indices: &[usize]) -> Self {
        let mut it = indices.iter();
        let first = match it.next() {
            Some(&i) => GroupWord::Generator(i),
            None => return GroupWord::Identity,
        };
        it.fold(first, |acc, &i| GroupWord::commutator(acc, GroupWord::Generator(i)))
    }

    /// Largest generator index occurring, 0 if none.
    pub fn max_generator(&self) -> usize {
        match self {
            GroupWord::Identity => 0,
            GroupWord::Generator(i) => *i,
            GroupWord::Product(fs) => fs.iter().map(Self::max_generator).max().unwrap_or(0),
            GroupWord::Inverse(w) | GroupWord::Power(w, _) => w.max_generator(),
            GroupWord::Commutator(a, b) => a.max_generator().max(b.max_generator()),
        }
    }

    /// Number of generator occurrences, counting through powers.
    pub fn letter_count(&self) -> usize {
        match self {
            GroupWord::Identity => 0,
            GroupWord::Generator(_) => 1,
            GroupWord::Product(fs) => fs.iter().map(Self::letter_count).sum(),
            GroupWord::Inverse(w) => w.letter_count(),
            GroupWord::Power(w, k) => w.letter_count() * k.unsigned_abs() as usize,
            GroupWord::Commutator(a, b) => 2 * (a.letter_count() + b.letter_count()),
        }
    }

    /// Parses `text`, rejecting generators outside `1..=n_letters`.
    pub fn parse(text: &str, n_letters: usize) -> Result<Self, ParseError> {
        let mut p = Parser {
            src: text,
            pos: 0,
            n_letters,
        };
        let w = p.word()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected {c:?}")));
        }
        Ok(w)
    }

    fn needs_parens(&self) -> bool {
        match self {
            GroupWord::Product(fs) => fs.len() != 1 || fs[0].needs_parens(),
            GroupWord::Inverse(_) | GroupWord::Power(..) => true,
            _ => false,
        }
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.needs_parens() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupWord::Identity => f.write_str("1"),
            GroupWord::Generator(i) => write!(f, "x{i}"),
            GroupWord::Product(fs) if fs.is_empty() => f.write_str("1"),
            GroupWord::Product(fs) => {
                for (k, w) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    if let GroupWord::Product(inner) = w {
                        if inner.len() > 1 {
                            write!(f, "({w})")?;
                            continue;
                        }
                    }
                    write!(f, "{w}")?;
                }
                Ok(())
            }
            GroupWord::Inverse(w) => {
                w.fmt_atom(f)?;
                f.write_str("^-1")
            }
            GroupWord::Power(w, k) => {
                w.fmt_atom(f)?;
                write!(f, "^{k}")
            }
            GroupWord::Commutator(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    n_letters: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, message: String) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message,
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {want:?}, found end of input"))),
        }
    }

    fn starts_atom(c: char) -> bool {
        matches!(c, '1' | 'x' | '(' | '[')
    }

    fn word(&mut self) -> Result<GroupWord, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') | Some('·') => {
                    self.bump();
                    factors.push(self.factor()?);
                }
                Some(c) if Self::starts_atom(c) => factors.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            GroupWord::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<GroupWord, ParseError> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.bump();
        self.skip_ws();
        let negative = if self.peek() == Some('-') {
            self.bump();
            self.skip_ws();
            true
        } else {
            false
        };
        let k = self.nat()? as i64;
        Ok(match (negative, k) {
            (true, 1) => atom.inverse(),
            (true, k) => atom.pow(-k),
            (false, k) => atom.pow(k),
        })
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected a number".into()));
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError::Syntax {
            position: start,
            message: "number too large".into(),
        })
    }

    fn atom(&mut self) -> Result<GroupWord, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('1') => {
                let v = self.nat()?;
                if v != 1 {
                    return Err(ParseError::Syntax {
                        position: start,
                        message: format!("bare number {v}; only 1 denotes the identity"),
                    });
                }
                Ok(GroupWord::Identity)
            }
            Some('x') => {
                self.bump();
                let at = self.pos;
                if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    return Err(self.error("expected generator index after 'x'".into()));
                }
                let i = self.nat()? as usize;
                if i == 0 || i > self.n_letters {
                    return Err(ParseError::GeneratorOutOfRange {
                        index: i,
                        n: self.n_letters,
                        position: at,
                    });
                }
                Ok(GroupWord::Generator(i))
            }
            Some('(') => {
                self.bump();
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.bump();
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                Ok(GroupWord::commutator(a, b))
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupWord::*;

    fn g(i: usize) -> GroupWord {
        Generator(i)
    }

    #[test]
    fn parses_products() {
        assert_eq!(
            GroupWord::parse("x1 x2 x3", 3).unwrap(),
            Product(vec![g(1), g(2), g(3)])
        );
        assert_eq!(GroupWord::parse("x1x2", 2).unwrap(), Product(vec![g(1), g(2)]));
        assert_eq!(GroupWord::parse(" 1 ", 2).unwrap(), Identity);
    }

    #[test]
    fn parses_nested_commutator_power() {
        let w = GroupWord::parse("[[x1,x3],x2]^2", 3).unwrap();
        let inner = GroupWord::commutator(GroupWord::commutator(g(1), g(3)), g(2));
        assert_eq!(w, inner.pow(2));
        assert_eq!(w.to_string(), "[[x1,x3],x2]^2");
    }

    #[test]
    fn negative_exponents() {
        assert_eq!(GroupWord::parse("x1^-1", 1).unwrap(), g(1).inverse());
        assert_eq!(GroupWord::parse("x1 ^ - 3", 1).unwrap(), g(1).pow(-3));
    }

    #[test]
    fn separators_accepted() {
        let a = GroupWord::parse("[x1,x2]^2·[x1,x3]^2 * x2", 3).unwrap();
        let b = GroupWord::parse("[x1,x2]^2 [x1,x3]^2 x2", 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_position() {
        assert_eq!(
            GroupWord::parse("x1 x4", 3),
            Err(ParseError::GeneratorOutOfRange {
                index: 4,
                n: 3,
                position: 4
            })
        );
        assert!(matches!(
            GroupWord::parse("[x1 x2]", 2),
            Err(ParseError::Syntax { position: 6, .. })
        ));
        assert!(matches!(GroupWord::parse("x0", 2), Err(ParseError::GeneratorOutOfRange { .. })));
        assert!(matches!(GroupWord::parse("2", 2), Err(ParseError::Syntax { position: 0, .. })));
        assert!(GroupWord::parse("", 2).is_err());
        assert!(GroupWord::parse("x1^", 2).is_err());
        assert!(GroupWord::parse("(x1", 2).is_err());
        assert!(GroupWord::parse("x", 2).is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "x1 x2^-1 (x1 x2)^4",
            "[x1 x2,x3^2]^-2",
            "((x1^2)^3)^-1",
            "1",
            "[[[x1,x2],x3],x4]",
        ] {
            let w = GroupWord::parse(text, 4).unwrap();
            let again = GroupWord::parse(&w.to_string(), 4).unwrap();
            assert_eq!(w, again, "{text}");
        }
    }

    #[test]
    fn left_normed_builder() {
        assert_eq!(GroupWord::left_normed(&[2]), g(2));
        assert_eq!(
            GroupWord::left_normed(&[1, 3, 2]).to_string(),
            "[[x1,x3],x2]"
        );
    }
}
