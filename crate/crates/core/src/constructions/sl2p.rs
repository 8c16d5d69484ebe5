use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::labeled::{Alphabet, SLabeledGraph};
use crate::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

type Mat = [u64; 4];

fn mul(a: Mat, b: Mat, p: u64) -> Mat {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

/// Right multiplication by `x1 = [[1,1],[0,1]]` and `x2 = [[1,0],[1,1]]` on
/// `SL(2, p)`, vertices numbered breadth first from the identity.
pub fn sl2p_graph(p: u64) -> Result<SLabeledGraph> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::InvalidParameter("p must be at least 5"));
    }
    let gens: [Mat; 2] = [[1, 1, 0, 1], [1, 0, 1, 1]];
    let code = |m: Mat| (((m[0] * p + m[1]) * p + m[2]) * p + m[3]) as usize;
    let mut index = vec![usize::MAX; (p * p * p * p) as usize];
    let mut elements = vec![[1, 0, 0, 1]];
    index[code(elements[0])] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let next = mul(elements[i], g, p);
            if index[code(next)] == usize::MAX {
                index[code(next)] = elements.len();
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
    }
    let perms: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| elements.iter().map(|&m| index[code(mul(m, g, p))]).collect())
        .collect();
    let graph = SLabeledGraph::new(elements.len(), Alphabet::new(["x1", "x2"])?, perms)?;
    if elements.len() as u64 != p * (p * p - 1) || !graph.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(graph)
}

pub fn sl2p_family(primes: &[u64]) -> Result<Vec<SLabeledGraph>> {
    primes.iter().map(|&p| sl2p_graph(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::spectrum;

    #[test]
    fn orders() {
        assert_eq!(sl2p_graph(5).unwrap().vertex_count(), 120);
        assert_eq!(sl2p_graph(7).unwrap().vertex_count(), 336);
        assert_eq!(sl2p_graph(9), Err(Error::NotPrime(9)));
        assert!(sl2p_graph(3).is_err());
    }

    #[test]
    fn p5_has_a_visible_gap() {
        let s = spectrum(&sl2p_graph(5).unwrap().undirected_view()).unwrap();
        assert!((s.lambda0 - 4.0).abs() < 1e-9);
        assert!(s.lambda1.unwrap() < 3.9);
    }
}
