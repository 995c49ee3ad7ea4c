use std::cmp::Ordering;

use crate::exactalg::Mono;

/// Monomial order over the variables of an ambient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic in variable-index order.
    GrevLex,
    /// Lexicographic in variable-index order.
    Lex,
    /// Elimination order: grevlex on the block, ties broken by grevlex on the rest.
    Block(Vec<usize>),
    /// Grevlex with the given variable least significant.
    GrevLexLast(usize),
}

/// Precomputed comparator for a [`MonomialOrder`] on `n` variables.
#[derive(Clone, Debug)]
pub(crate) struct OrderCmp {
    seq: Vec<usize>,
    block: usize,
    lex: bool,
}

impl OrderCmp {
    pub fn new(ord: &MonomialOrder, n: usize) -> OrderCmp {
        match ord {
            MonomialOrder::GrevLex => OrderCmp { seq: (0..n).collect(), block: 0, lex: false },
            MonomialOrder::Lex => OrderCmp { seq: (0..n).collect(), block: 0, lex: true },
            MonomialOrder::Block(b) => {
                let mut seq: Vec<usize> = (0..n).filter(|v| b.contains(v)).collect();
                let k = seq.len();
                seq.extend((0..n).filter(|v| !b.contains(v)));
                OrderCmp { seq, block: k, lex: false }
            }
            MonomialOrder::GrevLexLast(x) => {
                let mut seq: Vec<usize> = (0..n).filter(|v| v != x).collect();
                seq.push(*x);
                OrderCmp { seq, block: 0, lex: false }
            }
        }
    }

    fn grevlex(a: &Mono, b: &Mono, vars: &[usize]) -> Ordering {
        let da: u32 = vars.iter().map(|&v| a.0[v] as u32).sum();
        let db: u32 = vars.iter().map(|&v| b.0[v] as u32).sum();
        if da != db {
            return da.cmp(&db);
        }
        for &v in vars.iter().rev() {
            if a.0[v] != b.0[v] {
                return b.0[v].cmp(&a.0[v]);
            }
        }
        Ordering::Equal
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        if self.lex {
            for &v in &self.seq {
                if a.0[v] != b.0[v] {
                    return a.0[v].cmp(&b.0[v]);
                }
            }
            return Ordering::Equal;
        }
        if self.block > 0 {
            let o = Self::grevlex(a, b, &self.seq[..self.block]);
            if o != Ordering::Equal {
                return o;
            }
            return Self::grevlex(a, b, &self.seq[self.block..]);
        }
        Self::grevlex(a, b, &self.seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let c = OrderCmp::new(&MonomialOrder::GrevLex, 3);
        // x0*x2 < x1^2 in grevlex
        assert_eq!(c.cmp(&Mono::from_exps(&[1, 0, 1]), &Mono::from_exps(&[0, 2, 0])), Ordering::Less);
        assert_eq!(c.cmp(&Mono::from_exps(&[0, 0, 2]), &Mono::from_exps(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_eliminates() {
        let c = OrderCmp::new(&MonomialOrder::Block(vec![2]), 3);
        assert_eq!(c.cmp(&Mono::from_exps(&[0, 0, 1]), &Mono::from_exps(&[5, 5, 0])), Ordering::Greater);
    }
}
