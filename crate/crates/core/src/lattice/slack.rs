//! Rewriting integer inequality systems as equalities in nonnegative variables.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::LatticeError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `a·x ≥ b`
    AtLeast(BigInt),
    /// `a·x ≤ b`
    AtMost(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<BigInt>,
    pub relation: Relation,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearSystem {
    pub variables: Vec<String>,
    pub inequalities: Vec<Inequality>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

/// Equalities over `variables`; `nonnegative[i]` marks sign-constrained ones.
///
/// Variable order: the original variables, then one slack per rewritten
/// inequality in input order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EqualitySystem {
    pub variables: Vec<String>,
    pub nonnegative: Vec<bool>,
    pub equations: Vec<Equation>,
}

/// Replace each inequality by an equality with its own nonnegative slack.
///
/// Plain sign constraints `x ≥ 0` become nonnegativity flags rather than
/// equations. Slacks take names from `slack_names` in order, then `s1, s2, …`.
pub fn slackify(system: &LinearSystem, slack_names: &[&str]) -> EqualitySystem {
    let n = system.variables.len();
    let mut out = EqualitySystem {
        variables: system.variables.clone(),
        nonnegative: vec![false; n],
        equations: Vec::new(),
    };
    let mut pending = Vec::new();
    for ineq in &system.inequalities {
        if let Some(var) = sign_constraint(ineq) {
            out.nonnegative[var] = true;
        } else {
            pending.push(ineq);
        }
    }
    let mut named = slack_names.iter();
    let mut auto = 0;
    let mut next_name = |taken: &[String]| -> String {
        if let Some(s) = named.next() {
            return s.to_string();
        }
        loop {
            auto += 1;
            let name = format!("s{auto}");
            if !taken.contains(&name) {
                return name;
            }
        }
    };
    let total = n + pending.len();
    for (k, ineq) in pending.into_iter().enumerate() {
        let name = next_name(&out.variables);
        out.variables.push(name);
        out.nonnegative.push(true);
        let mut coeffs = ineq.coeffs.clone();
        coeffs.resize(total, BigInt::zero());
        let (slack, rhs) = match &ineq.relation {
            Relation::AtMost(b) => (BigInt::one(), b.clone()),
            Relation::AtLeast(b) => (-BigInt::one(), b.clone()),
        };
        coeffs[n + k] = slack;
        out.equations.push(Equation { coeffs, rhs });
    }
    for eq in out.equations.iter_mut() {
        eq.coeffs.resize(total, BigInt::zero());
    }
    out
}

fn sign_constraint(ineq: &Inequality) -> Option<usize> {
    let Relation::AtLeast(b) = &ineq.relation else {
        return None;
    };
    if !b.is_zero() {
        return None;
    }
    let mut nz = ineq.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
    match (nz.next(), nz.next()) {
        (Some((i, c)), None) if c.is_one() => Some(i),
        _ => None,
    }
}

/// Parses constraints such as `5q + n <= 20000`, one per line or separated
/// by `,`/`;`. Coefficients and right-hand sides must be integers.
pub fn parse_system(text: &str) -> Result<LinearSystem, LatticeError> {
    let mut variables: Vec<String> = Vec::new();
    let mut rows: Vec<(Vec<(usize, BigInt)>, Relation)> = Vec::new();
    for raw in text.split(['\n', ',', ';']) {
        let c = raw.trim();
        if c.is_empty() {
            continue;
        }
        let c = c.replace('≤', "<=").replace('≥', ">=");
        let (lhs, rhs, at_most) = if let Some((l, r)) = c.split_once("<=") {
            (l, r, true)
        } else if let Some((l, r)) = c.split_once(">=") {
            (l, r, false)
        } else {
            return Err(LatticeError::Parse(format!("`{c}`: expected <= or >=")));
        };
        let rhs: BigInt = rhs
            .trim()
            .parse()
            .map_err(|_| LatticeError::Parse(format!("`{}`: right-hand side must be an integer", rhs.trim())))?;
        let terms = parse_linear(lhs, &mut variables)?;
        rows.push((terms, if at_most { Relation::AtMost(rhs) } else { Relation::AtLeast(rhs) }));
    }
    let n = variables.len();
    let inequalities = rows
        .into_iter()
        .map(|(terms, relation)| {
            let mut coeffs = vec![BigInt::zero(); n];
            for (i, c) in terms {
                coeffs[i] += c;
            }
            Inequality { coeffs, relation }
        })
        .collect();
    Ok(LinearSystem { variables, inequalities })
}

fn parse_linear(expr: &str, variables: &mut Vec<String>) -> Result<Vec<(usize, BigInt)>, LatticeError> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(LatticeError::Parse("empty left-hand side".into()));
    }
    let mut terms = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let (num, var) = term.split_at(digits);
        let var = var.strip_prefix('*').unwrap_or(var);
        if var.starts_with('.') || var.is_empty() && num.is_empty() {
            return Err(LatticeError::Parse(format!("`{term}`: coefficients must be integers")));
        }
        if var.is_empty() || !var.chars().next().unwrap().is_alphabetic() || !var.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(LatticeError::Parse(format!("`{term}`: expected an integer coefficient and a variable")));
        }
        let coeff: BigInt = if num.is_empty() { BigInt::one() } else { num.parse().expect("digits") };
        let idx = match variables.iter().position(|v| v == var) {
            Some(i) => i,
            None => {
                variables.push(var.to_string());
                variables.len() - 1
            }
        };
        terms.push((idx, coeff * sign));
    }
    Ok(terms)
}

impl fmt::Display for EqualitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            let mut first = true;
            for (c, v) in eq.coeffs.iter().zip(&self.variables) {
                if c.is_zero() {
                    continue;
                }
                let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
                let mag = c.abs();
                if mag.is_one() {
                    write!(f, "{sign}{v}")?;
                } else {
                    write!(f, "{sign}{mag}{v}")?;
                }
                first = false;
            }
            writeln!(f, "={}", eq.rhs)?;
        }
        let nn: Vec<&str> = self
            .variables
            .iter()
            .zip(&self.nonnegative)
            .filter(|(_, &b)| b)
            .map(|(v, _)| v.as_str())
            .collect();
        if !nn.is_empty() {
            write!(f, "{}>=0", nn.join(","))?;
        }
        Ok(())
    }
}
