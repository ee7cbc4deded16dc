//! Dense-exponent monomials and monomial orders.
//!
//! Variable counts stay small (≤ 12 in every fixture), so dense exponent
//! vectors and bitmask variable sets are the right tradeoff.

use std::cmp::Ordering;

/// A monomial in a fixed number of variables, as a dense exponent vector with
/// its total degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Monomial {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn var(nvars: usize, index: usize, power: u16) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[index] = power;
        Monomial { exps, degree: power as u32 }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
            Some(Monomial { exps, degree: self.degree - other.degree })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of variables with positive exponent.
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }
}

/// A monomial order: a multiplicative total well-order on the monomials.
/// `Block` is the elimination (product) order that compares the masked block
/// first, both blocks by graded reverse lexicographic comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Block { eliminate: u32 },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::GrevLex => grevlex(a.exponents(), b.exponents(), a.degree(), b.degree()),
            MonomialOrder::Lex => lex(a.exponents(), b.exponents()),
            MonomialOrder::Block { eliminate } => {
                let (da, db) = (masked_degree(a, *eliminate), masked_degree(b, *eliminate));
                grevlex_masked(a, b, *eliminate, da, db)
                    .then_with(|| {
                        let keep = !eliminate;
                        let (da, db) = (masked_degree(a, keep), masked_degree(b, keep));
                        grevlex_masked(a, b, keep, da, db)
                    })
            }
        }
    }
}

fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn grevlex(a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // equal degree: larger = smaller exponent at the last differing position
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn masked_degree(m: &Monomial, mask: u32) -> u32 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &e)| e as u32)
        .sum()
}

fn grevlex_masked(a: &Monomial, b: &Monomial, mask: u32, da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for i in (0..a.nvars()).rev() {
        if mask & (1 << i) == 0 {
            continue;
        }
        match a.exponent(i).cmp(&b.exponent(i)) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// All monomials of total degree `d` in `nvars` variables, in descending
/// `order`. Deterministic; used as the fixed basis of each graded piece.
pub fn monomials_of_degree(nvars: usize, d: u32, order: MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u16; nvars];
    fill(&mut out, &mut current, 0, d);
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u16>, pos: usize, remaining: u32) {
    if pos == current.len() {
        if remaining == 0 {
            out.push(Monomial::new(current.clone()));
        }
        return;
    }
    if pos + 1 == current.len() {
        current[pos] = remaining as u16;
        out.push(Monomial::new(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e as u16;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u16]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GrevLex;
        // x > y > z in three variables
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
        // classic grevlex tie-break: x*z < y^2
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lex_examples() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        // eliminate variable 0: any monomial containing it beats any that does not
        let o = MonomialOrder::Block { eliminate: 0b01 };
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 1]);
        assert!(b.divides(&a));
        assert_eq!(a.try_div(&b).unwrap(), m(&[1, 0]));
        assert_eq!(a.lcm(&m(&[0, 3])), m(&[2, 3]));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 2])));
    }

    #[test]
    fn degree_enumeration_is_complete_and_sorted() {
        let all = monomials_of_degree(3, 2, MonomialOrder::GrevLex);
        assert_eq!(all.len(), 6);
        for w in all.windows(2) {
            assert_eq!(MonomialOrder::GrevLex.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(all[0], m(&[2, 0, 0]));
    }
}
