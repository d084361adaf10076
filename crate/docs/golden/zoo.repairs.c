{b c em}
{c em r}
