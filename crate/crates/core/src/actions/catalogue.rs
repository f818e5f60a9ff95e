//! Plain-text group catalogue.
//!
//! ```text
//! # comment
//! name A9_ASL23
//! degree 9
//! gen (1,2,3)
//! gen (1,2,3,4,5,6,7,8,9)
//! sub gen (1,2,3)(4,5,6)(7,8,9)
//! expect order 181440 suborder 216
//! ```
//!
//! Cycles are 1-based. `sub gen` lines are optional; without them the entry is just a
//! group. `expect` lines are checked when the catalogue is loaded.

use std::path::Path;

use num_bigint::BigUint;

use super::{coset_action, LabelledAction};
use crate::caps::Caps;
use crate::error::{Result, SaxlError};
use crate::perm::{PermGroup, Permutation};

const BUNDLED: &str = include_str!("../../data/catalogue.txt");

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub id: String,
    pub group: PermGroup,
    pub subgroup: Option<PermGroup>,
}

impl CatalogueEntry {
    /// The action on the cosets of the subgroup.
    pub fn action(&self, caps: &Caps) -> Result<LabelledAction> {
        let sub = self
            .subgroup
            .as_ref()
            .ok_or_else(|| SaxlError::Unsupported(format!("catalogue entry {} has no subgroup", self.id)))?;
        coset_action(&self.id, &self.group, sub, caps)
    }
}

#[derive(Default)]
struct Draft {
    id: String,
    line: usize,
    degree: Option<usize>,
    gens: Vec<(usize, String)>,
    sub_gens: Vec<(usize, String)>,
    order: Option<BigUint>,
    suborder: Option<BigUint>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> SaxlError {
    SaxlError::Parse { line, msg: msg.into() }
}

impl Draft {
    fn finish(self) -> Result<CatalogueEntry> {
        let degree = self
            .degree
            .ok_or_else(|| parse_err(self.line, format!("entry {} has no degree", self.id)))?;
        let perms = |lines: &[(usize, String)]| -> Result<Vec<Permutation>> {
            lines
                .iter()
                .map(|(ln, text)| Permutation::parse_cycles(degree, text).map_err(|e| parse_err(*ln, e.to_string())))
                .collect()
        };
        let group = PermGroup::new(degree, perms(&self.gens)?)?;
        check_order(&self.id, "order", &group, self.order.as_ref())?;
        let subgroup = if self.sub_gens.is_empty() {
            None
        } else {
            let sub = PermGroup::new(degree, perms(&self.sub_gens)?)?;
            check_order(&self.id, "suborder", &sub, self.suborder.as_ref())?;
            if !sub.is_subgroup_of(&group) {
                return Err(SaxlError::NotSubgroup(format!("catalogue entry {}", self.id)));
            }
            Some(sub)
        };
        Ok(CatalogueEntry {
            id: self.id,
            group,
            subgroup,
        })
    }
}

fn check_order(id: &str, what: &str, g: &PermGroup, want: Option<&BigUint>) -> Result<()> {
    match want {
        Some(n) if g.order() != *n => Err(SaxlError::OrderMismatch {
            expected: format!("{id} {what} {n}"),
            found: g.order().to_string(),
        }),
        _ => Ok(()),
    }
}

pub fn parse_catalogue(text: &str) -> Result<Vec<CatalogueEntry>> {
    let mut drafts: Vec<Draft> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if key == "name" {
            if rest.is_empty() {
                return Err(parse_err(ln, "empty name"));
            }
            drafts.push(Draft {
                id: rest.to_string(),
                line: ln,
                ..Draft::default()
            });
            continue;
        }
        let draft = drafts
            .last_mut()
            .ok_or_else(|| parse_err(ln, format!("{key:?} before any name line")))?;
        match key {
            "degree" => {
                let d = rest.parse::<usize>().map_err(|_| parse_err(ln, "bad degree"))?;
                draft.degree = Some(d);
            }
            "gen" => draft.gens.push((ln, rest.to_string())),
            "sub" => {
                let cycles = rest
                    .strip_prefix("gen")
                    .ok_or_else(|| parse_err(ln, "expected 'sub gen'"))?;
                draft.sub_gens.push((ln, cycles.trim().to_string()));
            }
            "expect" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let mut k = 0;
                while k < toks.len() {
                    let value = toks
                        .get(k + 1)
                        .and_then(|v| v.parse::<BigUint>().ok())
                        .ok_or_else(|| parse_err(ln, "bad expect value"))?;
                    match toks[k] {
                        "order" => draft.order = Some(value),
                        "suborder" => draft.suborder = Some(value),
                        other => return Err(parse_err(ln, format!("unknown expectation {other:?}"))),
                    }
                    k += 2;
                }
            }
            other => return Err(parse_err(ln, format!("unknown keyword {other:?}"))),
        }
    }
    let mut seen = std::collections::HashSet::new();
    for d in &drafts {
        if !seen.insert(d.id.clone()) {
            return Err(parse_err(d.line, format!("duplicate name {}", d.id)));
        }
    }
    drafts.into_iter().map(Draft::finish).collect()
}

pub fn load_catalogue(path: &Path) -> Result<Vec<CatalogueEntry>> {
    parse_catalogue(&std::fs::read_to_string(path)?)
}

/// The catalogue compiled into the crate.
pub fn bundled_catalogue() -> Result<Vec<CatalogueEntry>> {
    parse_catalogue(BUNDLED)
}

/// Look up one entry by id.
pub fn find_entry(entries: Vec<CatalogueEntry>, id: &str) -> Result<CatalogueEntry> {
    entries
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| SaxlError::UnknownCatalogueId(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "name X\ndegree 3\ngen (1,2,3)\nbogus 4\n";
        match parse_catalogue(text) {
            Err(SaxlError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        let text = "name X\ndegree 3\ngen (1,5)\n";
        match parse_catalogue(text) {
            Err(SaxlError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_catalogue("degree 3\n"),
            Err(SaxlError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn expectations_are_checked() {
        let text = "name S3\ndegree 3\ngen (1,2,3)\ngen (1,2)\nexpect order 5\n";
        assert!(matches!(parse_catalogue(text), Err(SaxlError::OrderMismatch { .. })));
        let text = "name S3\ndegree 3\ngen (1,2,3)\ngen (1,2)\nsub gen (1,2)\nexpect order 6 suborder 2\n";
        let e = parse_catalogue(text).unwrap();
        assert_eq!(e[0].subgroup.as_ref().unwrap().order_u128(), 2);
    }
}
