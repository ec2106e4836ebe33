# Use this for mapping to external links
extlinks = {
    "galois-docs": ("https://mhostetter.github.io/galois/latest/%s", "%s"),
    "click-docs": ("https://click.palletsprojects.com/en/stable/%s", "%s"),
    "wikipedia": ("https://en.wikipedia.org/wiki/%s", "%s"),
    "black-coding-style": ("https://black.readthedocs.io/en/stable/the_black_code_style/current_style.html%s", None),
    "pre-commit-bot": ("https://results.pre-commit.ci/%s", None),
}

# Use this for mapping for links to commonly used documentation
intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
}
