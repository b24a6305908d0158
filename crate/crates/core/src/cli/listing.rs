//! Human-readable clause listing.
//!
//! ```text
//! CLASS <label> POLARITY + : term1 & term2 & !term3
//! CLASS <label> POLARITY - : NOT(term1 & term2)
//! ```
//!
//! `!term` is a negated literal. Lines starting with `#` are comments.

use crate::error::{Error, Result};
use crate::novelty::MulticlassTm;
use crate::text::Vocabulary;
use crate::tm::{Clause, Polarity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedClause {
    pub class: String,
    pub polarity: Polarity,
    /// `(term, negated)` in listing order.
    pub literals: Vec<(String, bool)>,
}

impl ListedClause {
    pub fn plain_terms(&self) -> impl Iterator<Item = &str> {
        self.literals
            .iter()
            .filter(|(_, neg)| !neg)
            .map(|(t, _)| t.as_str())
    }
}

pub fn format_clause(class: &str, polarity: Polarity, literals: &[(String, bool)]) -> String {
    let body = literals
        .iter()
        .map(|(t, neg)| if *neg { format!("!{t}") } else { t.clone() })
        .collect::<Vec<_>>()
        .join(" & ");
    let body = match polarity {
        Polarity::Positive => body,
        Polarity::Negative => format!("NOT({body})"),
    };
    format!("CLASS {class} POLARITY {polarity} : {body}")
}

pub fn parse_clause_line(line: &str) -> Result<ListedClause> {
    let bad = || Error::Format(format!("not a clause line: `{line}`"));
    let rest = line.strip_prefix("CLASS ").ok_or_else(bad)?;
    let (head, body) = rest.split_once(" : ").ok_or_else(bad)?;
    let (class, pol) = head.rsplit_once(" POLARITY ").ok_or_else(bad)?;
    let polarity = match pol {
        "+" => Polarity::Positive,
        "-" => Polarity::Negative,
        _ => return Err(bad()),
    };
    let body = match polarity {
        Polarity::Positive => body,
        Polarity::Negative => body
            .strip_prefix("NOT(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(bad)?,
    };
    let literals = body
        .split(" & ")
        .map(|t| match t.strip_prefix('!') {
            Some(t) if !t.is_empty() => Ok((t.to_string(), true)),
            None if !t.is_empty() => Ok((t.to_string(), false)),
            _ => Err(bad()),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ListedClause {
        class: class.to_string(),
        polarity,
        literals,
    })
}

/// Parses a full listing, skipping blank and `#` lines.
pub fn parse_listing(text: &str) -> Result<Vec<ListedClause>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(parse_clause_line)
        .collect()
}

/// Non-empty clauses per class and polarity, largest first (clause order on
/// ties), at most `top_k` per polarity.
pub fn list_clauses(
    mtm: &MulticlassTm,
    vocab: &Vocabulary,
    top_k: usize,
) -> Result<Vec<ListedClause>> {
    let mut out = Vec::new();
    for (label, m) in mtm.labels().iter().zip(mtm.machines()) {
        for (polarity, bank) in [
            (Polarity::Positive, m.positive_clauses()),
            (Polarity::Negative, m.negative_clauses()),
        ] {
            let mut ranked: Vec<&Clause> = bank.iter().filter(|c| !c.is_empty()).collect();
            ranked.sort_by_key(|c| std::cmp::Reverse(c.include_count()));
            for c in ranked.into_iter().take(top_k) {
                out.push(ListedClause {
                    class: label.clone(),
                    polarity,
                    literals: c.literal_terms(vocab)?,
                });
            }
        }
    }
    Ok(out)
}
