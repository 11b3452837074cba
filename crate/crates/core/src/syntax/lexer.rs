use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Number(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    /// `^-1`
    InvMd,
    /// `^~`
    InvNimd,
    /// `^2`
    Square,
    Eq,
    Ne,
    Comma,
    Implies,
}

impl Token {
    pub(crate) fn describe(&self) -> String {
        match self {
            Token::Number(n) => n.to_string(),
            Token::Ident(s) => s.clone(),
            Token::Plus => "+".into(),
            Token::Minus => "-".into(),
            Token::Star => "*".into(),
            Token::Slash => "/".into(),
            Token::LParen => "(".into(),
            Token::RParen => ")".into(),
            Token::InvMd => "^-1".into(),
            Token::InvNimd => "^~".into(),
            Token::Square => "^2".into(),
            Token::Eq => "=".into(),
            Token::Ne => "!=".into(),
            Token::Comma => ",".into(),
            Token::Implies => "==>".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub token: Token,
    pub pos: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let skip_ws = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let pos = i;
        let single = |token| Spanned { token, pos };
        match c {
            b'+' => {
                out.push(single(Token::Plus));
                i += 1;
            }
            b'-' => {
                out.push(single(Token::Minus));
                i += 1;
            }
            b'*' => {
                out.push(single(Token::Star));
                i += 1;
            }
            b'/' => {
                out.push(single(Token::Slash));
                i += 1;
            }
            b'(' => {
                out.push(single(Token::LParen));
                i += 1;
            }
            b')' => {
                out.push(single(Token::RParen));
                i += 1;
            }
            b',' => {
                out.push(single(Token::Comma));
                i += 1;
            }
            b'=' => {
                if text[i..].starts_with("==>") {
                    out.push(single(Token::Implies));
                    i += 3;
                } else {
                    out.push(single(Token::Eq));
                    i += 1;
                }
            }
            b'!' => {
                let j = skip_ws(i + 1);
                if bytes.get(j) == Some(&b'=') {
                    out.push(single(Token::Ne));
                    i = j + 1;
                } else {
                    return Err(SyntaxError::Lex {
                        pos,
                        message: "expected `=` after `!`".into(),
                    });
                }
            }
            b'^' => {
                let j = skip_ws(i + 1);
                match bytes.get(j) {
                    Some(b'~') => {
                        out.push(single(Token::InvNimd));
                        i = j + 1;
                    }
                    Some(b'2') => {
                        out.push(single(Token::Square));
                        i = j + 1;
                    }
                    Some(b'-') => {
                        let k = skip_ws(j + 1);
                        if bytes.get(k) == Some(&b'1')
                            && !bytes.get(k + 1).is_some_and(u8::is_ascii_digit)
                        {
                            out.push(single(Token::InvMd));
                            i = k + 1;
                        } else {
                            return Err(SyntaxError::Lex {
                                pos,
                                message: "only `^-1`, `^~` and `^2` are supported".into(),
                            });
                        }
                    }
                    _ => {
                        return Err(SyntaxError::Lex {
                            pos,
                            message: "only `^-1`, `^~` and `^2` are supported".into(),
                        })
                    }
                }
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<u64>().map_err(|_| SyntaxError::Lex {
                    pos,
                    message: "numeral too large".into(),
                })?;
                if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                    return Err(SyntaxError::Lex {
                        pos,
                        message: "identifiers must start with a lowercase letter".into(),
                    });
                }
                out.push(single(Token::Number(n)));
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
                {
                    i += 1;
                }
                if i < bytes.len() && bytes[i].is_ascii_uppercase() {
                    return Err(SyntaxError::Lex {
                        pos: i,
                        message: "identifiers are lowercase".into(),
                    });
                }
                out.push(single(Token::Ident(text[start..i].to_string())));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(SyntaxError::Lex {
                    pos,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<Token> {
        tokenize(s).unwrap().into_iter().map(|t| t.token).collect()
    }

    #[test]
    fn inverse_tokens() {
        assert_eq!(kinds("x^-1"), vec![Token::Ident("x".into()), Token::InvMd]);
        assert_eq!(kinds("x ^ - 1"), vec![Token::Ident("x".into()), Token::InvMd]);
        assert_eq!(kinds("x^~"), vec![Token::Ident("x".into()), Token::InvNimd]);
        assert_eq!(kinds("x^2"), vec![Token::Ident("x".into()), Token::Square]);
    }

    #[test]
    fn relation_tokens() {
        assert_eq!(
            kinds("x != 0, y = 0 ==> x = y"),
            vec![
                Token::Ident("x".into()),
                Token::Ne,
                Token::Number(0),
                Token::Comma,
                Token::Ident("y".into()),
                Token::Eq,
                Token::Number(0),
                Token::Implies,
                Token::Ident("x".into()),
                Token::Eq,
                Token::Ident("y".into()),
            ]
        );
    }

    #[test]
    fn lexical_errors_carry_positions() {
        assert!(matches!(tokenize("x ^ 3"), Err(SyntaxError::Lex { pos: 2, .. })));
        assert!(matches!(tokenize("x^-12"), Err(SyntaxError::Lex { pos: 1, .. })));
        assert!(matches!(tokenize("x # y"), Err(SyntaxError::Lex { pos: 2, .. })));
        assert!(matches!(tokenize("X"), Err(SyntaxError::Lex { pos: 0, .. })));
        assert!(matches!(tokenize("3x"), Err(SyntaxError::Lex { pos: 0, .. })));
    }
}
