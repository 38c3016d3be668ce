use super::{content_lines, parse_cards, parse_literal, parse_usize, write_cards, write_literal, FormatError};
use crate::logic::{Literal, World};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NnfNode {
    True,
    False,
    Lit(Literal),
    And(Vec<usize>),
    Or(Vec<usize>),
}

/// A negation-free circuit. Children always precede their parents and the
/// last node is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NnfDocument {
    pub cards: Vec<usize>,
    pub nodes: Vec<NnfNode>,
}

impl NnfDocument {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Value of every node under `w`.
    pub fn node_values(&self, w: &World) -> Vec<bool> {
        let mut val = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let v = match n {
                NnfNode::True => true,
                NnfNode::False => false,
                NnfNode::Lit(l) => l.states.contains(w.0[l.var]),
                NnfNode::And(ch) => ch.iter().all(|&c| val[c]),
                NnfNode::Or(ch) => ch.iter().any(|&c| val[c]),
            };
            val.push(v);
        }
        val
    }

    pub fn evaluate(&self, w: &World) -> bool {
        self.node_values(w)[self.root()]
    }
}

/// Parses NNF text:
///
/// ```text
/// nnf <nodes> <vars>
/// d <card1> ... <cardV>
/// L 1:1        (node 0)
/// L 1:2        (node 1)
/// O 2 0 1      (node 2, the root)
/// ```
///
/// Node kinds are `T`, `F`, `L var:states`, `A k ids..` and `O k ids..`,
/// with 0-based node ids that must refer to earlier lines.
pub fn parse_nnf(text: &str) -> Result<NnfDocument, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::MalformedHeader {
        line: 1,
        msg: "missing 'nnf' header".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "nnf" {
        return Err(FormatError::MalformedHeader {
            line: hline,
            msg: format!("expected 'nnf <nodes> <vars>', got '{header}'"),
        });
    }
    let nnodes = parse_usize(hline, toks[1])?;
    let nvars = parse_usize(hline, toks[2])?;
    if nnodes == 0 {
        return Err(FormatError::MalformedHeader {
            line: hline,
            msg: "a circuit needs at least one node".into(),
        });
    }
    let (dline, dtext) = lines.next().ok_or(FormatError::MalformedHeader {
        line: hline + 1,
        msg: "missing cardinality line".into(),
    })?;
    let cards = parse_cards(dline, dtext, nvars)?;

    let mut nodes = Vec::with_capacity(nnodes);
    let mut last = dline;
    for (lno, text) in lines {
        last = lno;
        let id = nodes.len();
        if id == nnodes {
            return Err(FormatError::CountMismatch {
                line: lno,
                what: "nodes",
                expected: nnodes,
                found: nnodes + 1,
            });
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        let node = match toks[0] {
            "T" | "F" if toks.len() == 1 => {
                if toks[0] == "T" {
                    NnfNode::True
                } else {
                    NnfNode::False
                }
            }
            "L" if toks.len() == 2 => NnfNode::Lit(parse_literal(lno, toks[1], &cards).map_err(|_| FormatError::InvalidLiteral {
                line: lno,
                token: toks[1].to_string(),
            })?),
            "A" | "O" if toks.len() >= 2 => {
                let k = parse_usize(lno, toks[1])?;
                if toks.len() - 2 != k {
                    return Err(FormatError::ArityMismatch {
                        line: lno,
                        declared: k,
                        found: toks.len() - 2,
                    });
                }
                let mut children = Vec::with_capacity(k);
                for t in &toks[2..] {
                    let c = parse_usize(lno, t)?;
                    if c >= id {
                        return Err(FormatError::ForwardReference {
                            line: lno,
                            node: id,
                            child: c,
                        });
                    }
                    children.push(c);
                }
                if toks[0] == "A" {
                    NnfNode::And(children)
                } else {
                    NnfNode::Or(children)
                }
            }
            _ => {
                return Err(FormatError::InvalidToken {
                    line: lno,
                    token: text.to_string(),
                })
            }
        };
        nodes.push(node);
    }
    if nodes.len() != nnodes {
        return Err(FormatError::CountMismatch {
            line: last,
            what: "nodes",
            expected: nnodes,
            found: nodes.len(),
        });
    }
    Ok(NnfDocument { cards, nodes })
}

pub fn write_nnf(doc: &NnfDocument) -> String {
    let mut out = format!("nnf {} {}\n", doc.nodes.len(), doc.cards.len());
    write_cards(&mut out, &doc.cards);
    for n in &doc.nodes {
        match n {
            NnfNode::True => out.push('T'),
            NnfNode::False => out.push('F'),
            NnfNode::Lit(l) => {
                out.push_str("L ");
                write_literal(&mut out, l);
            }
            NnfNode::And(ch) | NnfNode::Or(ch) => {
                out.push(if matches!(n, NnfNode::And(_)) { 'A' } else { 'O' });
                out.push_str(&format!(" {}", ch.len()));
                for c in ch {
                    out.push_str(&format!(" {c}"));
                }
            }
        }
        out.push('\n');
    }
    out
}
