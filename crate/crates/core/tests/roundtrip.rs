use proptest::prelude::*;
use tied_core::verify::random_tied_braid_input;
use tied_core::{aj_bracket, parse_diagram, ResolutionStrategy};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_input_parses_back(seed in any::<u64>(), strands in 2usize..=4, len in 0usize..=6, colors in 1u32..=3) {
        let input = random_tied_braid_input(seed, strands, len, colors);
        let text = input.to_string();
        let (again, d) = parse_diagram(&text).unwrap();
        prop_assert_eq!(again.to_string(), text);
        let d0 = input.build().unwrap();
        prop_assert_eq!(
            aj_bracket(&d, ResolutionStrategy::Canonical),
            aj_bracket(&d0, ResolutionStrategy::Canonical)
        );
    }
}

#[test]
fn hopf_text_value() {
    let (_, braid) = parse_diagram("braid 2 1 1\ncolors 1 1\n").unwrap();
    let b = aj_bracket(&braid, ResolutionStrategy::Canonical);
    assert_eq!(b.to_string(), "-A^4 - A^-4");
}
