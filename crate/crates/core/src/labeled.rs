//! S-labeled graphs: one permutation of the vertex set per letter.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::multigraph::Multigraph;
use crate::word::{Sign, Word};
use crate::{Error, Rational, Result};

/// Ordered list of distinct letter names. Formal inverses are implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Alphabet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = names.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, name) in letters.iter().enumerate() {
            if letters[..i].contains(name) {
                return Err(Error::DuplicateLetter(name.clone()));
            }
        }
        Ok(Alphabet { letters })
    }

    /// `a, b, c, ...` for up to 26 letters, `s26, s27, ...` beyond.
    pub fn standard(k: usize) -> Alphabet {
        let letters = (0..k.max(1))
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("s{i}")
                }
            })
            .collect();
        Alphabet { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.letters.get(index).map(String::as_str)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }
}

/// A finite Schreier graph of the free group on `alphabet`.
///
/// Vertex `x` has an `s`-labeled edge to `x·s = perm[s][x]`. Inverse
/// permutations are stored alongside so that words with inverse letters
/// evaluate in constant time per syllable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SLabeledGraph {
    n: usize,
    alphabet: Alphabet,
    perms: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
}

impl SLabeledGraph {
    /// Validates `perms` (one array of length `n` per letter) and builds the graph.
    pub fn new(n: usize, alphabet: Alphabet, perms: Vec<Vec<usize>>) -> Result<SLabeledGraph> {
        if perms.len() != alphabet.len() {
            return Err(Error::LengthMismatch {
                letter: String::from("<alphabet>"),
                expected: alphabet.len(),
                found: perms.len(),
            });
        }
        let mut inverses = Vec::with_capacity(perms.len());
        for (s, perm) in perms.iter().enumerate() {
            let letter = || alphabet.name(s).unwrap_or_default().to_string();
            if perm.len() != n {
                return Err(Error::LengthMismatch {
                    letter: letter(),
                    expected: n,
                    found: perm.len(),
                });
            }
            let mut inv = vec![usize::MAX; n];
            for (x, &y) in perm.iter().enumerate() {
                if y >= n {
                    return Err(Error::ImageOutOfRange {
                        letter: letter(),
                        image: y,
                        n,
                    });
                }
                if inv[y] != usize::MAX {
                    return Err(Error::NonBijection {
                        letter: letter(),
                        image: y,
                    });
                }
                inv[y] = x;
            }
            inverses.push(inv);
        }
        Ok(SLabeledGraph {
            n,
            alphabet,
            perms,
            inverses,
        })
    }

    /// One vertex with `k` loops.
    pub fn bouquet(k: usize) -> SLabeledGraph {
        let alphabet = Alphabet::standard(k);
        let perms = vec![vec![0]; alphabet.len()];
        SLabeledGraph::new(1, alphabet, perms).expect("identity permutations")
    }

    /// Directed `n`-cycle on a single letter `a`.
    pub fn cycle(n: usize) -> SLabeledGraph {
        let perm = (0..n).map(|x| (x + 1) % n).collect();
        SLabeledGraph::new(n, Alphabet::standard(1), vec![perm]).expect("rotation")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn perm(&self, letter: usize) -> &[usize] {
        &self.perms[letter]
    }

    pub fn inverse_perm(&self, letter: usize) -> &[usize] {
        &self.inverses[letter]
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    #[inline]
    pub fn step(&self, v: usize, letter: usize, sign: Sign) -> usize {
        match sign {
            Sign::Pos => self.perms[letter][v],
            Sign::Neg => self.inverses[letter][v],
        }
    }

    /// Image of `v` under the right action of `w`.
    pub fn apply_word(&self, v: usize, w: &Word) -> usize {
        w.syllables().iter().fold(v, |x, &(l, s)| self.step(x, l, s))
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_letter() {
            Some(l) if l >= self.letter_count() => Err(Error::LetterOutOfRange(l)),
            _ => Ok(()),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// The permutation `x ↦ x·w` as an array.
    pub fn word_permutation(&self, w: &Word) -> Vec<usize> {
        (0..self.n).map(|x| self.apply_word(x, w)).collect()
    }

    /// Forgets labels and directions: one undirected edge `{x, x·s}` per
    /// directed labeled edge. Every vertex has degree `2k` (loops count 2).
    pub fn undirected_view(&self) -> Multigraph {
        let mut edges = Vec::with_capacity(self.n * self.letter_count());
        for perm in &self.perms {
            for (x, &y) in perm.iter().enumerate() {
                edges.push((x, y));
            }
        }
        Multigraph::new(self.n, edges).expect("endpoints in range")
    }

    /// Orbits of the action, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n];
        let mut orbits = Vec::new();
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![root];
            label[root] = id;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for s in 0..self.letter_count() {
                    for y in [self.perms[s][x], self.inverses[s][x]] {
                        if label[y] == usize::MAX {
                            label[y] = id;
                            orbit.push(y);
                            queue.push_back(y);
                        }
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.n > 0 && self.orbits().len() == 1
    }

    /// Restriction of the action to an invariant vertex set, renumbered in
    /// the order given.
    pub fn induced(&self, vertices: &[usize]) -> Result<SLabeledGraph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let mut perms = Vec::with_capacity(self.letter_count());
        for perm in &self.perms {
            let mut p = Vec::with_capacity(vertices.len());
            for &v in vertices {
                let y = index[perm[v]];
                if y == usize::MAX {
                    return Err(Error::DomainNotInvariant);
                }
                p.push(y);
            }
            perms.push(p);
        }
        SLabeledGraph::new(vertices.len(), self.alphabet.clone(), perms)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &SLabeledGraph) -> Result<SLabeledGraph> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let shift = self.n;
        let perms = self
            .perms
            .iter()
            .zip(&other.perms)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&y| y + shift)).collect())
            .collect();
        SLabeledGraph::new(self.n + other.n, self.alphabet.clone(), perms)
    }

    /// Same action under a different alphabet of the same size.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<SLabeledGraph> {
        if alphabet.len() != self.letter_count() {
            return Err(Error::AlphabetMismatch);
        }
        SLabeledGraph::new(self.n, alphabet, self.perms.clone())
    }
}

/// `|E(G) △ E(H)| / |X|` over directed labeled edges, exactly.
pub fn edit_distance(g: &SLabeledGraph, h: &SLabeledGraph) -> Result<Rational> {
    let differing = labeled_edge_difference(g, h)?;
    if g.n == 0 {
        return Ok(Rational::from_integer(0));
    }
    Ok(Rational::new(differing as i64, g.n as i64))
}

/// `|E(G) △ E(H)|`: each slot `(x, s)` where the images disagree contributes
/// one edge to each side of the symmetric difference.
pub fn labeled_edge_difference(g: &SLabeledGraph, h: &SLabeledGraph) -> Result<usize> {
    if g.n != h.n || g.alphabet != h.alphabet {
        return Err(Error::ShapeMismatch);
    }
    let slots: usize = g
        .perms
        .iter()
        .zip(&h.perms)
        .map(|(a, b)| a.iter().zip(b).filter(|(x, y)| x != y).count())
        .sum();
    Ok(2 * slots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle() -> SLabeledGraph {
        SLabeledGraph::new(4, Alphabet::standard(1), vec![vec![1, 2, 3, 0]]).unwrap()
    }

    #[test]
    fn build_examples() {
        let single = SLabeledGraph::new(1, Alphabet::standard(1), vec![vec![0]]).unwrap();
        assert_eq!(single.undirected_view().edges(), &[(0, 0)]);
        assert_eq!(four_cycle().vertex_count(), 4);
        let bad = SLabeledGraph::new(2, Alphabet::standard(1), vec![vec![0, 0]]);
        assert_eq!(
            bad,
            Err(Error::NonBijection {
                letter: "a".into(),
                image: 0
            })
        );
        let short = SLabeledGraph::new(3, Alphabet::standard(1), vec![vec![0, 1]]);
        assert!(matches!(short, Err(Error::LengthMismatch { .. })));
        assert!(matches!(
            SLabeledGraph::new(2, Alphabet::standard(1), vec![vec![0, 5]]),
            Err(Error::ImageOutOfRange { .. })
        ));
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert_eq!(Alphabet::new(["a", "b", "a"]), Err(Error::DuplicateLetter("a".into())));
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn apply_word_examples() {
        let g = four_cycle();
        assert_eq!(g.apply_word(0, &Word::letter(0).then(&Word::letter(0))), 2);
        assert_eq!(g.apply_word(3, &Word::identity()), 3);
        assert_eq!(g.apply_word(0, &Word::inverse_letter(0)), 3);
    }

    #[test]
    fn undirected_view_examples() {
        let bouquet = SLabeledGraph::bouquet(2).undirected_view();
        assert_eq!(bouquet.edges(), &[(0, 0), (0, 0)]);
        assert_eq!(bouquet.degrees(), vec![4]);

        let c4 = four_cycle().undirected_view();
        assert_eq!(c4.degrees(), vec![2; 4]);

        // A transposition contributes {0,1} once from each endpoint.
        let swap = SLabeledGraph::new(2, Alphabet::standard(1), vec![vec![1, 0]]).unwrap();
        let view = swap.undirected_view();
        assert_eq!(view.edges(), &[(0, 1), (0, 1)]);
        assert_eq!(view.degrees(), vec![2, 2]);
    }

    #[test]
    fn edit_distance_examples() {
        let g = SLabeledGraph::cycle(3);
        assert_eq!(edit_distance(&g, &g).unwrap(), Rational::from_integer(0));
        let id = SLabeledGraph::new(3, Alphabet::standard(1), vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(edit_distance(&g, &id).unwrap(), Rational::from_integer(2));
        assert_eq!(edit_distance(&g, &four_cycle()), Err(Error::ShapeMismatch));
    }

    #[test]
    fn orbits_and_induced() {
        let g = SLabeledGraph::new(5, Alphabet::standard(1), vec![vec![1, 0, 3, 4, 2]]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2, 3, 4]]);
        assert!(!g.is_transitive());
        let tri = g.induced(&[2, 3, 4]).unwrap();
        assert_eq!(tri.perm(0), &[1, 2, 0]);
        assert_eq!(g.induced(&[0, 2]), Err(Error::DomainNotInvariant));
    }
}
