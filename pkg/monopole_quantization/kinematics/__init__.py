# Empty __init__.py file for kinematics package
