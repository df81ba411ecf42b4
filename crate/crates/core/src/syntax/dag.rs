use std::collections::HashMap;

use super::{Formula, PropName};

pub type NodeId = usize;

/// One node of a hash-consed formula; children always have smaller ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Atom(PropName),
    Eq,
    Top,
    Bot,
    Not(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Implies(NodeId, NodeId),
    Iff(NodeId, NodeId),
    WBox(NodeId),
    WDia(NodeId),
    BBox(NodeId),
    BDia(NodeId),
}

/// A formula with shared subformulas merged, in topological order.
#[derive(Clone, Debug)]
pub struct Dag {
    nodes: Vec<Node>,
    root: NodeId,
}

impl Dag {
    pub fn new(phi: &Formula) -> Self {
        // Keyed on nodes whose children are already ids, so each lookup is
        // constant-size; hashing whole subformulas is quadratic on long
        // chains.
        let mut ids: HashMap<Node, NodeId> = HashMap::new();
        let mut nodes = Vec::new();
        let root = Self::intern(phi, &mut ids, &mut nodes);
        Dag { nodes, root }
    }

    fn intern(phi: &Formula, ids: &mut HashMap<Node, NodeId>, nodes: &mut Vec<Node>) -> NodeId {
        let mut go = |f: &Formula| Self::intern(f, ids, nodes);
        let node = match phi {
            Formula::Atom(p) => Node::Atom(p.clone()),
            Formula::EqConst => Node::Eq,
            Formula::Top => Node::Top,
            Formula::Bot => Node::Bot,
            Formula::Not(a) => Node::Not(go(a)),
            Formula::WBox(a) => Node::WBox(go(a)),
            Formula::WDia(a) => Node::WDia(go(a)),
            Formula::BBox(a) => Node::BBox(go(a)),
            Formula::BDia(a) => Node::BDia(go(a)),
            Formula::And(a, b) => {
                let a = go(a);
                Node::And(a, go(b))
            }
            Formula::Or(a, b) => {
                let a = go(a);
                Node::Or(a, go(b))
            }
            Formula::Implies(a, b) => {
                let a = go(a);
                Node::Implies(a, go(b))
            }
            Formula::Iff(a, b) => {
                let a = go(a);
                Node::Iff(a, go(b))
            }
        };
        *ids.entry(node).or_insert_with_key(|node| {
            nodes.push(node.clone());
            nodes.len() - 1
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse, subformulas};
    use super::*;

    #[test]
    fn shares_identical_subformulas() {
        let phi = parse("[W]l:p & ~[W]l:p").unwrap();
        let dag = Dag::new(&phi);
        assert_eq!(dag.len(), subformulas(&phi).len());
        assert_eq!(dag.root(), dag.len() - 1);
        for (i, n) in dag.nodes().iter().enumerate() {
            if let Node::And(a, b) = n {
                assert!(*a < i && *b < i);
            }
        }
    }
}
