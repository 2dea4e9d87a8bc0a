#![no_main]

use libfuzzer_sys::fuzz_target;

use hsc_core::tables::AnchorTable;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = AnchorTable::parse(text) {
        let ks = table.k_anchors();
        let ds = table.d_anchors();
        for &k in ks {
            for &d in ds {
                let _ = table.lookup(k, d);
                let _ = table.lookup(k + 0.5, d * 1.5);
            }
        }
        assert_eq!(AnchorTable::parse(&table.to_tsv()).as_ref(), Ok(&table));
    }
});
