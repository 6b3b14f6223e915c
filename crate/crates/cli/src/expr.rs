//! Arithmetic for `--d` values: numbers, `+ - * /`, parentheses, `pi`, `e`,
//! and the functions `ln`, `sqrt`, `exp`.

#[derive(Debug, Clone, PartialEq)]
pub struct ExprError(pub String);

impl std::fmt::Display for ExprError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, what: &str) -> Result<T, ExprError> {
        Err(ExprError(format!(
            "{what} at position {} in '{}'",
            self.pos,
            String::from_utf8_lossy(self.src)
        )))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<f64, ExprError> {
        let mut v = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let r = self.term()?;
            v = if op == b'+' { v + r } else { v - r };
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<f64, ExprError> {
        let mut v = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let r = self.unary()?;
            v = if op == b'*' { v * r } else { v / r };
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<f64, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<f64, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                // exponent part
                if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
                    let save = self.pos;
                    self.pos += 1;
                    if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-') {
                        self.pos += 1;
                    }
                    let digits = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if self.pos == digits {
                        self.pos = save;
                    }
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                text.parse::<f64>()
                    .map_err(|_| ExprError(format!("bad number '{text}'")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match name {
                    "pi" => Ok(std::f64::consts::PI),
                    "e" => Ok(std::f64::consts::E),
                    "ln" | "sqrt" | "exp" => {
                        if self.peek() != Some(b'(') {
                            return self.err("expected '(' after function name");
                        }
                        let arg = self.atom()?;
                        Ok(match name {
                            "ln" => arg.ln(),
                            "sqrt" => arg.sqrt(),
                            _ => arg.exp(),
                        })
                    }
                    _ => Err(ExprError(format!("unknown name '{name}'"))),
                }
            }
            _ => self.err("expected a number"),
        }
    }
}

pub fn eval(src: &str) -> Result<f64, ExprError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    if !v.is_finite() {
        return Err(ExprError(format!("'{src}' is not a finite number")));
    }
    Ok(v)
}

/// Comma-separated list of expressions.
pub fn eval_list(src: &str) -> Result<Vec<f64>, ExprError> {
    if src.trim().is_empty() {
        return Err(ExprError("empty list".into()));
    }
    src.split(',').map(|s| eval(s.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(eval("1/3").unwrap(), 1.0 / 3.0);
        assert_eq!(eval("ln(2)").unwrap(), 2f64.ln());
        assert_eq!(eval("ln(sqrt(3))").unwrap(), 3f64.sqrt().ln());
        assert_eq!(eval(" 2 * (1 + 0.5) ").unwrap(), 3.0);
        assert_eq!(eval("-1e-2").unwrap(), -0.01);
        assert_eq!(eval("pi/2").unwrap(), std::f64::consts::FRAC_PI_2);
        assert_eq!(eval("0.5493").unwrap(), 0.5493);
    }

    #[test]
    fn errors() {
        for bad in ["", "1/", "foo", "ln 2", "(1", "1 2", "1/0"] {
            assert!(eval(bad).is_err(), "{bad}");
        }
        assert!(eval_list(" ").is_err());
        assert_eq!(eval_list("1, 1/2").unwrap(), vec![1.0, 0.5]);
    }
}
