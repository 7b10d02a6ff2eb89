//! Text format for proof scripts.
//!
//! ```text
//! -- comments start with two dashes
//! system: K
//! 1. p -> p | q ; TAUT
//! 2. #p & p -> #(p | q) ; R(1)
//! 3. #!q <-> #q ; AX(neg, p:=q)
//! ```
//!
//! Justifications: `TAUT`, `PREM`, `MP(i,j)` (line `j` is line `i` → this
//! line), `US(i, p:=φ, ...)`, `R(i)`, `RTri(i)`, `RE(i)` and
//! `AX(label[, p:=φ, ...])`. Without a substitution `AX` accepts any
//! instance of the schema.

use thiserror::Error;

use crate::formula::{parse, Substitution};

use super::{Justification, ProofLine, ProofScript, SystemName};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("script line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

fn split_args(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.retain(|a| !a.is_empty());
    out
}

fn parse_sigma(args: &[&str]) -> Result<Substitution, String> {
    let mut sigma = Substitution::new();
    for arg in args {
        let (atom, phi) = arg
            .split_once(":=")
            .ok_or_else(|| format!("expected `atom:=formula`, found `{arg}`"))?;
        let phi = parse(phi.trim()).map_err(|e| format!("in substitution `{arg}`: {e}"))?;
        if sigma.insert(atom.trim().to_string(), phi).is_some() {
            return Err(format!("atom `{}` substituted twice", atom.trim()));
        }
    }
    Ok(sigma)
}

fn parse_index(arg: Option<&&str>) -> Result<usize, String> {
    let arg = arg.ok_or("missing line reference")?;
    arg.parse()
        .map_err(|_| format!("expected a line number, found `{arg}`"))
}

fn parse_justification(text: &str) -> Result<Justification, String> {
    let text = text.trim();
    let (name, args) = match text.split_once('(') {
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| format!("unclosed argument list in `{text}`"))?;
            (name.trim(), split_args(inner))
        }
        None => (text, Vec::new()),
    };
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!(
                "{name} takes {n} argument(s), found {}",
                args.len()
            ))
        }
    };
    Ok(match name {
        "TAUT" => {
            arity(0)?;
            Justification::Taut
        }
        "PREM" => {
            arity(0)?;
            Justification::Premise
        }
        "MP" => {
            arity(2)?;
            Justification::Mp(parse_index(args.first())?, parse_index(args.get(1))?)
        }
        "US" => Justification::Us(parse_index(args.first())?, parse_sigma(&args[1..])?),
        "R" => {
            arity(1)?;
            Justification::R(parse_index(args.first())?)
        }
        "RTri" => {
            arity(1)?;
            Justification::RTri(parse_index(args.first())?)
        }
        "RE" => {
            arity(1)?;
            Justification::Re(parse_index(args.first())?)
        }
        "AX" => {
            let label = args.first().ok_or("AX needs an axiom label")?.to_string();
            let sigma = if args.len() > 1 {
                Some(parse_sigma(&args[1..])?)
            } else {
                None
            };
            Justification::Axiom { label, sigma }
        }
        other => return Err(format!("unknown rule `{other}`")),
    })
}

pub fn parse_script(text: &str) -> Result<ProofScript, ScriptError> {
    let mut system = None;
    let mut lines: Vec<ProofLine> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let err = |message: String| ScriptError {
            line: k + 1,
            message,
        };
        let content = raw.split("--").next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix("system:") {
            if system.is_some() {
                return Err(err("system declared twice".into()));
            }
            system = Some(name.trim().parse::<SystemName>().map_err(err)?);
            continue;
        }
        let (number, rest) = content
            .split_once('.')
            .ok_or_else(|| err("expected `<index>. <formula> ; <rule>`".into()))?;
        let index: usize = number
            .trim()
            .parse()
            .map_err(|_| err(format!("bad line number `{}`", number.trim())))?;
        if lines.last().map_or(index == 0, |l| index <= l.index) {
            return Err(err(format!("line number {index} is not increasing")));
        }
        let (formula, rule) = rest
            .rsplit_once(';')
            .ok_or_else(|| err("missing `; <rule>`".into()))?;
        let formula = parse(formula.trim()).map_err(|e| err(e.to_string()))?;
        let justification = parse_justification(rule).map_err(err)?;
        lines.push(ProofLine {
            index,
            formula,
            justification,
        });
    }
    let system = system.ok_or(ScriptError {
        line: 0,
        message: "missing `system:` header".into(),
    })?;
    Ok(ProofScript { system, lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{substitution, Formula};
    use crate::proof::check_script;

    #[test]
    fn parses_and_prints() {
        let text = "-- demo\nsystem: K\n1. p -> p | q ; TAUT\n2. #p & p -> #(p | q) ; R(1)\n3. #!q <-> #q ; AX(neg, p:=q)\n";
        let s = parse_script(text).unwrap();
        assert_eq!(s.system, SystemName::K);
        assert_eq!(s.lines.len(), 3);
        assert_eq!(
            s.lines[2].justification,
            Justification::Axiom {
                label: "neg".into(),
                sigma: Some(substitution([("p", Formula::atom("q"))]))
            }
        );
        assert!(check_script(&s).is_ok());
        assert_eq!(parse_script(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn capital_t_is_an_atom() {
        let s = parse_script("system: K\n1. T -> q ; PREM\n2. #T & T -> #q ; R(1)\n").unwrap();
        assert_eq!(s.lines[1].formula.props_of().len(), 2);
    }

    #[test]
    fn substitution_with_commas_inside() {
        let s = parse_script("system: K\n1. p ; PREM\n2. q ; US(1, p:=#(a & b), q:=r)\n").unwrap();
        match &s.lines[1].justification {
            Justification::Us(1, sigma) => assert_eq!(sigma.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors() {
        assert_eq!(parse_script("1. p ; TAUT").unwrap_err().line, 0);
        assert_eq!(parse_script("system: K\n1. p TAUT").unwrap_err().line, 2);
        assert_eq!(parse_script("system: K\n1. p ; FOO").unwrap_err().line, 2);
        assert_eq!(
            parse_script("system: K\n2. p ; TAUT\n1. p ; TAUT")
                .unwrap_err()
                .line,
            3
        );
        assert!(parse_script("system: S5\n").is_err());
        assert!(parse_script("system: K\n1. p ; MP(1)").is_err());
    }
}
