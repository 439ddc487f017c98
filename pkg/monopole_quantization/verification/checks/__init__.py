# Empty __init__.py file for checks package
