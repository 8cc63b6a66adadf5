use super::{ExplorationBudget, Presentation, Relation, Word};
use crate::error::{Error, Result};

/// Whitespace separated tokens with their 1-based starting column.
pub(crate) fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(move |(byte, tok)| (line[..byte].chars().count() + 1, tok))
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `name^k` into `(name, k)`; plain names get exponent 1.
pub(crate) fn split_power(token: &str) -> Option<(&str, usize)> {
    match token.split_once('^') {
        None => is_name(token).then_some((token, 1)),
        Some((name, exp)) => {
            let k: usize = exp.parse().ok()?;
            (is_name(name) && k >= 1).then_some((name, k))
        }
    }
}

struct PendingRelation {
    line: usize,
    sides: [Vec<(usize, String)>; 2],
}

/// Parses the presentation file format:
///
/// ```text
/// # comment
/// gens: a b c
/// rel: a b c = c b
/// budget: max_word_length=12 max_ball_size=100000
/// ```
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut generators: Option<Vec<String>> = None;
    let mut pending = Vec::new();
    let mut budget = ExplorationBudget::default();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let Some((keyword, rest)) = line.split_once(':') else {
            return Err(Error::Syntax {
                line: line_no,
                column: first_col(line),
                message: "expected `gens:`, `rel:` or `budget:`".into(),
            });
        };
        // column of the first character after the colon
        let offset = keyword.chars().count() + 1;
        match keyword.trim() {
            "gens" => {
                if generators.is_some() {
                    return Err(Error::Syntax {
                        line: line_no,
                        column: first_col(line),
                        message: "generators declared twice".into(),
                    });
                }
                let mut names: Vec<String> = Vec::new();
                for (col, tok) in tokens(rest) {
                    if !is_name(tok) {
                        return Err(Error::Syntax {
                            line: line_no,
                            column: col + offset,
                            message: format!("invalid generator name `{tok}`"),
                        });
                    }
                    if names.iter().any(|n| n == tok) {
                        return Err(Error::DuplicateGenerator {
                            name: tok.to_string(),
                            line: line_no,
                        });
                    }
                    names.push(tok.to_string());
                }
                if names.len() > 255 {
                    return Err(Error::Syntax {
                        line: line_no,
                        column: first_col(line),
                        message: "at most 255 generators are supported".into(),
                    });
                }
                generators = Some(names);
            }
            "rel" => {
                let mut parts = rest.split('=');
                let (Some(lhs), Some(rhs), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(Error::Syntax {
                        line: line_no,
                        column: first_col(line),
                        message: "a relation needs exactly one `=`".into(),
                    });
                };
                let rhs_offset = offset + lhs.chars().count() + 1;
                let mut sides: [Vec<(usize, String)>; 2] = [Vec::new(), Vec::new()];
                for (k, (side, off)) in [(lhs, offset), (rhs, rhs_offset)].into_iter().enumerate() {
                    for (col, tok) in tokens(side) {
                        if tok == "1" {
                            continue;
                        }
                        let Some((name, exp)) = split_power(tok) else {
                            return Err(Error::Syntax {
                                line: line_no,
                                column: col + off,
                                message: format!("malformed token `{tok}`"),
                            });
                        };
                        for _ in 0..exp {
                            sides[k].push((col + off, name.to_string()));
                        }
                    }
                }
                if sides[0].is_empty() || sides[1].is_empty() {
                    return Err(Error::EmptyRelationSide { line: line_no });
                }
                pending.push(PendingRelation { line: line_no, sides });
            }
            "budget" => {
                for (col, tok) in tokens(rest) {
                    let bad = || Error::Syntax {
                        line: line_no,
                        column: col + offset,
                        message: format!("malformed budget entry `{tok}`"),
                    };
                    let (key, value) = tok.split_once('=').ok_or_else(bad)?;
                    let value: usize = value.parse().map_err(|_| bad())?;
                    match key {
                        "max_word_length" => budget.max_word_length = value,
                        "max_ball_size" => budget.max_ball_size = value,
                        _ => return Err(bad()),
                    }
                }
            }
            other => {
                return Err(Error::Syntax {
                    line: line_no,
                    column: first_col(line),
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
    }

    let generators = generators.unwrap_or_default();
    let mut relations = Vec::with_capacity(pending.len());
    for rel in pending {
        let mut words = [Vec::new(), Vec::new()];
        for (k, side) in rel.sides.iter().enumerate() {
            for (col, name) in side {
                let g = generators
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| Error::UndeclaredGenerator {
                        name: name.clone(),
                        line: rel.line,
                        column: *col,
                    })?;
                words[k].push(g as u8);
            }
        }
        let [lhs, rhs] = words;
        relations.push(Relation {
            lhs: Word(lhs),
            rhs: Word(rhs),
        });
    }
    let p = Presentation {
        generators,
        relations,
        budget,
    };
    p.check_budget(&budget)?;
    Ok(p)
}

fn first_col(line: &str) -> usize {
    line.chars().take_while(|c| c.is_whitespace()).count() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_t_presentation() {
        let p = parse_presentation("gens: a b c\nrel: a b c = c b\n").unwrap();
        assert_eq!(p.generators, vec!["a", "b", "c"]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].lhs, Word(vec![0, 1, 2]));
        assert_eq!(p.relations[0].rhs, Word(vec![2, 1]));
        assert_eq!(p.budget, ExplorationBudget::default());
    }

    #[test]
    fn free_monoid_without_relations() {
        let p = parse_presentation("# free\ngens: a\n").unwrap();
        assert!(p.relations.is_empty());
    }

    #[test]
    fn empty_side_rejected() {
        assert_eq!(
            parse_presentation("rel: a b = 1"),
            Err(Error::EmptyRelationSide { line: 1 })
        );
        assert_eq!(
            parse_presentation("gens: a b\nrel: a b =   "),
            Err(Error::EmptyRelationSide { line: 2 })
        );
    }

    #[test]
    fn undeclared_generator_position() {
        let err = parse_presentation("gens: a b\nrel: a b = b x").unwrap_err();
        assert_eq!(
            err,
            Error::UndeclaredGenerator {
                name: "x".into(),
                line: 2,
                column: 14
            }
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_presentation("gens: a b\nrel a b = b a") {
            Err(Error::Syntax { line: 2, column: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_presentation("gens: a 9b") {
            Err(Error::Syntax { line: 1, column: 9, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_presentation("gens: a\nrel: a = a = a") {
            Err(Error::Syntax { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn budget_line_and_powers() {
        let p = parse_presentation(
            "gens: a b c\nrel: b a^2 = a^2 c  # n = 3\nbudget: max_word_length=9 max_ball_size=500\n",
        )
        .unwrap();
        assert_eq!(p.relations[0].lhs, Word(vec![1, 0, 0]));
        assert_eq!(p.budget, ExplorationBudget::new(9, 500).unwrap());
        assert!(matches!(
            parse_presentation("gens: a\nbudget: depth=3"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn duplicate_generator() {
        assert!(matches!(
            parse_presentation("gens: a b a"),
            Err(Error::DuplicateGenerator { .. })
        ));
    }

    #[test]
    fn round_trip_text() {
        let p = parse_presentation("gens: a b\nrel: a b = b a a\n").unwrap();
        assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }
}
