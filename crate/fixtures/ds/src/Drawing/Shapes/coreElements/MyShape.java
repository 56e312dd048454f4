package Drawing.Shapes.coreElements;

import java.awt.Color;
import java.awt.Graphics;

/*
 * Abstract superclass that stores the two end points
 * and the color shared by every shape.
 */
public abstract class MyShape {
    protected int X1; // x coordinate of the first point
    protected int Y1; // y coordinate of the first point
    protected int X2; // x coordinate of the second point
    protected int Y2; // y coordinate of the second point
    protected Color color;

    // default values: both points at the origin, black
    public MyShape() {
        X1 = 0;
        Y1 = 0;
        X2 = 0;
        Y2 = 0;
        color = Color.BLACK;
    }

    // initialize coordinates and color from the arguments
    public MyShape(int x1, int y1, int x2, int y2, Color shapeColor) {
        X1 = x1;
        Y1 = y1;
        X2 = x2;
        Y2 = y2;
        color = shapeColor;
    }

    public void setX1(int x1) {
        X1 = x1;
    }

    public void setY1(int y1) {
        Y1 = y1;
    }

    // the second point follows the mouse while dragging
    public void setX2(int x2) {
        X2 = x2;
    }

    public void setY2(int y2) {
        Y2 = y2;
    }

    public void setColor(Color newColor) {
        color = newColor;
    }

    public Color getColor() {
        return color;
    }

    // each subclass renders itself on the graphics context
    public abstract void draw(Graphics g);
}
