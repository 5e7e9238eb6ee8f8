//! The property audit on the corpus and on random small tangles.
//!
//! The acceptance target audits a further 200 tangles from another seed.

mod support;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn corpus_properties() {
    for name in support::CORPUS {
        support::audit(&support::corpus(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn random_tangle_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa11ce);
    for n in 0..60 {
        let t = support::random_tangle(&mut rng, 5);
        support::audit(&t).unwrap_or_else(|e| panic!("random tangle {n}: {e}\n{}", t.to_text()));
    }
}
