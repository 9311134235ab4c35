#![no_main]

use libfuzzer_sys::fuzz_target;

use ctpair::group::FiniteGroup;
use ctpair::module::GModule;

// The first byte picks the module and the degree; the rest is the literal.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let g = match head & 3 {
        0 => FiniteGroup::cyclic(2),
        1 => FiniteGroup::cyclic(4),
        2 => FiniteGroup::symmetric3(),
        _ => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
    };
    let moduli = if head & 4 == 0 { vec![2] } else { vec![2, 4] };
    let m = GModule::trivial_action(&g.whole(), moduli);
    let degree = usize::from((head >> 3) % 4);
    if let Ok(c) = ctpair::io::parse_cochain_str(&m, degree, text) {
        let back = ctpair::io::parse_cochain_str(&m, degree, &ctpair::io::cochain_literal(&c).to_string());
        assert_eq!(back.ok(), Some(c));
    }
});
