namespace ps {}
