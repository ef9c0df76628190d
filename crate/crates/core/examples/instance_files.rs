//! Instance files: write a random instance, read it back, and see the
//! line-precise validation errors.

use std::path::Path;

use auctionlab::experiment::{instance_to_toml, parse_instance};
use auctionlab::instances::random_sca;
use auctionlab::rng::seeded;

fn main() -> auctionlab::Result<()> {
    let inst = random_sca(&mut seeded(3), 3, 5, 2, 20);
    let text = instance_to_toml(&inst)?;
    print!("{text}");
    assert_eq!(parse_instance(&text, Path::new("random.instance"))?, inst);

    let broken = "m = 3\n\n[[agents]]\nid = 1\natoms = [{ items = [0, 1], value = -1 }]\n";
    if let Err(e) = parse_instance(broken, Path::new("broken.instance")) {
        println!("rejected: {e}");
    }
    Ok(())
}
