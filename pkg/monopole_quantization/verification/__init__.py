# Empty __init__.py file for verification package
